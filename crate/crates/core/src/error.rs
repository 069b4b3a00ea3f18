use thiserror::Error;

use crate::ring::ElementId;
use crate::validate::{Axiom, InvolutionAxiom};

/// Failures raised while constructing rings, involutions and corners.
///
/// Every variant that concerns concrete elements carries their ids so the
/// failure can be re-checked by hand against the tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ring of order {order} exceeds the size cap of {cap}")]
    SizeCapExceeded { order: u128, cap: usize },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("ring axiom `{axiom}` fails at {}", fmt_ids(.witness))]
    AxiomViolation {
        axiom: Axiom,
        witness: Vec<ElementId>,
    },

    #[error("involution axiom `{axiom}` fails at {}", fmt_ids(.witness))]
    InvolutionViolation {
        axiom: InvolutionAxiom,
        witness: Vec<ElementId>,
    },

    #[error("involution `{involution}` is not admissible: {reason}")]
    InvolutionInadmissible { involution: String, reason: String },

    #[error("element {0} is not a projection")]
    InvalidProjection(ElementId),

    #[error("element {0} is not a unit")]
    NotAUnit(ElementId),

    #[error("element {id} is out of range for a ring of order {order}")]
    ElementOutOfRange { id: ElementId, order: usize },
}

pub(crate) fn fmt_ids(ids: &[ElementId]) -> String {
    let parts: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub type Result<T, E = RingError> = std::result::Result<T, E>;
