//! Finite rings stored as complete operation tables.
//!
//! Every ring is flattened onto contiguous ids `0..order`. Composite rings
//! keep a [`Layout`] describing how ids decode into components so elements
//! can be printed in a readable form:
//!
//! - `GF(p^2)`: id `a0 + p*a1` is the class of `a0 + a1*x`.
//! - products `A x B`: id `a*|B| + b` for the pair `(a, b)`.
//! - `M_n(S)`: entries in row-major order, entry `k` is the base-`|S|` digit
//!   of weight `|S|^k` (so `E11` has the smallest weight).
//! - corners `pRp`: ids follow the ascending order of the embedded elements.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};

/// Index of an element in a [`FiniteRing`]. The natural integer order is the
/// tie-breaking order used by every search.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
#[repr(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub const fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ElementId {
    fn from(v: u32) -> Self {
        ElementId(v)
    }
}

/// How element ids decode into structured values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    Plain,
    Field {
        p: u32,
        degree: u32,
    },
    Product {
        left: Box<Layout>,
        right: Box<Layout>,
        right_order: usize,
    },
    Matrix {
        base: Box<Layout>,
        base_order: usize,
        n: usize,
    },
    Corner {
        base: Box<Layout>,
        embedding: Arc<[ElementId]>,
    },
}

impl Layout {
    pub fn format(&self, id: ElementId) -> String {
        match self {
            Layout::Plain => id.to_string(),
            Layout::Field { p, degree } => {
                let mut rest = id.0;
                let mut terms = Vec::new();
                for k in 0..*degree {
                    let c = rest % p;
                    rest /= p;
                    if c == 0 {
                        continue;
                    }
                    terms.push(match (k, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".to_string(),
                        (1, c) => format!("{c}x"),
                        (k, 1) => format!("x^{k}"),
                        (k, c) => format!("{c}x^{k}"),
                    });
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.reverse();
                    terms.join("+")
                }
            }
            Layout::Product {
                left,
                right,
                right_order,
            } => {
                let a = ElementId::new(id.index() / right_order);
                let b = ElementId::new(id.index() % right_order);
                format!("({},{})", left.format(a), right.format(b))
            }
            Layout::Matrix {
                base,
                base_order,
                n,
            } => {
                let entries = MatrixShape::new(*base_order, *n).decode(id);
                let rows: Vec<String> = entries
                    .chunks(*n)
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(|&e| base.format(e)).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Layout::Corner { base, embedding } => base.format(embedding[id.index()]),
        }
    }
}

/// Row-major radix encoding of `n x n` matrices over a ring of order `base_order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixShape {
    pub base_order: usize,
    pub n: usize,
}

impl MatrixShape {
    pub fn new(base_order: usize, n: usize) -> Self {
        MatrixShape { base_order, n }
    }

    pub fn encode(&self, entries: &[ElementId]) -> ElementId {
        debug_assert_eq!(entries.len(), self.n * self.n);
        let mut id = 0usize;
        for e in entries.iter().rev() {
            id = id * self.base_order + e.index();
        }
        ElementId::new(id)
    }

    pub fn decode(&self, id: ElementId) -> Vec<ElementId> {
        let mut rest = id.index();
        (0..self.n * self.n)
            .map(|_| {
                let d = rest % self.base_order;
                rest /= self.base_order;
                ElementId::new(d)
            })
            .collect()
    }
}

/// A finite associative ring with identity, stored as complete tables.
///
/// Values of this type are only produced by validated constructors.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<ElementId>,
    mul: Vec<ElementId>,
    neg: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
    label: String,
    layout: Layout,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

impl FiniteRing {
    /// Assembles a ring from tables that have already passed validation.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_validated(
        order: usize,
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
        neg: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
        label: String,
        layout: Layout,
    ) -> Self {
        FiniteRing {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            label,
            layout,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.order as u32).map(ElementId)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .skip(a.index() + 1)
                .all(|b| self.commutes(a, b))
        })
    }

    /// Row-major addition table.
    pub fn add_table(&self) -> &[ElementId] {
        &self.add
    }

    /// Row-major multiplication table.
    pub fn mul_table(&self) -> &[ElementId] {
        &self.mul
    }

    pub fn check_element(&self, id: ElementId) -> Result<ElementId> {
        if id.index() < self.order {
            Ok(id)
        } else {
            Err(RingError::ElementOutOfRange {
                id,
                order: self.order,
            })
        }
    }

    /// True when both rings have identical tables under the same ids.
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.order == other.order
            && self.add == other.add
            && self.mul == other.mul
            && self.zero == other.zero
            && self.one == other.one
    }

    pub fn format_element(&self, id: ElementId) -> String {
        self.layout.format(id)
    }
}
