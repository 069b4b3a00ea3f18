//! Finite rings with involution.
//!
//! Build *-rings from small families (residue rings, `GF(p^2)`, products,
//! matrix rings, corners, raw tables), enumerate their idempotents,
//! projections and units, decide clean / *-clean / regularity properties by
//! exhaustive witness search, and check the known equivalences between those
//! properties across a corpus of rings.
//!
//! ```
//! use starclean_core::{classify_ring, BuildConfig, PredicateName, StarRing, make_zmod};
//!
//! let s = StarRing::swap_product(&make_zmod(2).unwrap(), &BuildConfig::default()).unwrap();
//! let report = classify_ring(&s);
//! assert!(report.holds(PredicateName::StronglyClean));
//! assert!(!report.holds(PredicateName::StarClean));
//! ```

/// Implements `ALL`, `name`, `Display` and `FromStr` for a fieldless enum
/// whose variants have fixed kebab-case names.
macro_rules! kebab_names {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($ty::$variant => $name),+
                }
            }
        }

        impl ::std::fmt::Display for $ty {
            fn fmt(&self, f: &mut ::std::fmt::Formatter<'_>) -> ::std::fmt::Result {
                f.write_str(self.name())
            }
        }

        impl ::std::str::FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                $ty::ALL
                    .iter()
                    .copied()
                    .find(|v| v.name() == s)
                    .ok_or_else(|| {
                        let known: Vec<&str> = $ty::ALL.iter().map(|v| v.name()).collect();
                        format!("unknown {} `{s}` (expected one of: {})", stringify!($ty), known.join(", "))
                    })
            }
        }
    };
}

pub mod classify;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod report;
pub mod ring;
pub mod sets;
pub mod spec;
pub mod star;
pub mod theorems;
pub mod validate;

pub use classify::{
    classify_ring, decomposition_witness, factorization_witness, is_predicate,
    ClassificationReport, Classifier, Condition, DecompositionMode, FactorizationMode,
    PredicateName, PredicateVerdict, Witness, WitnessMode,
};
pub use construct::{
    make_gf, make_matrix_ring, make_product, make_table_ring, make_zmod, matrix_unit, BuildConfig,
    DEFAULT_MAX_ORDER,
};
pub use corpus::{default_corpus, sample_corpus, CorpusEntry};
pub use error::RingError;
pub use report::{parse_machine_report, render_report, RenderMode, Report};
pub use ring::{ElementId, FiniteRing, Layout, MatrixShape};
pub use sets::{
    annihilator, enumerate_set, inverse, principal_ideal, SetKind, Side, StructureSets,
};
pub use spec::{
    parse_ring_spec, parse_spec_document, parse_spec_documents, InvolutionSpec, RingSpec,
    RingSpecDocument, SpecError, StarSpec,
};
pub use star::{attach_involution, make_corner_ring, CornerRing, StarRing};
pub use theorems::{
    check_claim, run_claim_suite, separation_search, ClaimParams, ClaimVerdict, SeparationReport,
    SuiteCell, SuiteReport, TheoremId,
};
pub use validate::{validate_involution, validate_ring, Axiom, InvolutionAxiom};
