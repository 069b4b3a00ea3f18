//! Axiom checks for ring tables and involutions.
//!
//! Table rings are always checked exhaustively. Built-in families above
//! [`EXHAUSTIVE_LIMIT`] elements fall back to a fixed-seed sample of
//! [`SAMPLED_TRIPLES`] triples for the cubic axioms; everything quadratic or
//! cheaper is still checked in full.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::ring::{ElementId, FiniteRing, Layout};

pub const EXHAUSTIVE_LIMIT: usize = 512;
pub const SAMPLED_TRIPLES: usize = 1_000_000;
const SAMPLE_SEED: u64 = 0x5eed_2a11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    MultiplicativeIdentity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverse => "additive inverse",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvolutionAxiom {
    Permutation,
    Additive,
    AntiMultiplicative,
    SelfInverse,
    FixesZero,
    FixesOne,
}

impl fmt::Display for InvolutionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionAxiom::Permutation => "bijective on elements",
            InvolutionAxiom::Additive => "(x+y)* = x* + y*",
            InvolutionAxiom::AntiMultiplicative => "(xy)* = y* x*",
            InvolutionAxiom::SelfInverse => "(x*)* = x",
            InvolutionAxiom::FixesZero => "0* = 0",
            InvolutionAxiom::FixesOne => "1* = 1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Coverage {
    Exhaustive,
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`], sampled above.
    Adaptive,
}

fn violation(axiom: Axiom, witness: &[usize]) -> RingError {
    RingError::AxiomViolation {
        axiom,
        witness: witness.iter().map(|&i| ElementId::new(i)).collect(),
    }
}

struct Tables<'a> {
    n: usize,
    add: &'a [ElementId],
    mul: &'a [ElementId],
}

impl Tables<'_> {
    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b].index()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b].index()
    }

    /// Smallest two-sided identity, or the pair `(candidate, x)` showing why
    /// the best candidate fails. The best candidate is the smallest one-sided
    /// (left) identity if there is one, otherwise element 0.
    fn identity(
        &self,
        op: impl Fn(usize, usize) -> usize,
    ) -> std::result::Result<usize, (usize, usize)> {
        let n = self.n;
        let first_failure = |e: usize| (0..n).find(|&x| op(e, x) != x || op(x, e) != x);
        let mut fallback = None;
        for e in 0..n {
            match first_failure(e) {
                None => return Ok(e),
                Some(x) => {
                    if fallback.is_none() && (0..n).all(|y| op(e, y) == y) {
                        fallback = Some((e, x));
                    }
                }
            }
        }
        Err(fallback.unwrap_or_else(|| (0, first_failure(0).unwrap_or(0))))
    }

    fn check_triple(&self, x: usize, y: usize, z: usize) -> Option<Axiom> {
        if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
            return Some(Axiom::AdditiveAssociativity);
        }
        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
            return Some(Axiom::MultiplicativeAssociativity);
        }
        if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
            return Some(Axiom::LeftDistributivity);
        }
        if self.mul(self.add(x, y), z) != self.add(self.mul(x, z), self.mul(y, z)) {
            return Some(Axiom::RightDistributivity);
        }
        None
    }
}

/// Validates raw tables and discovers zero, negation and one.
pub(crate) fn validate_tables(
    order: usize,
    add: &[ElementId],
    mul: &[ElementId],
    coverage: Coverage,
) -> Result<(ElementId, Vec<ElementId>, ElementId)> {
    if order == 0 {
        return Err(RingError::InvalidParameter(
            "a ring needs at least one element".into(),
        ));
    }
    for (name, table) in [("addition", add), ("multiplication", mul)] {
        if table.len() != order * order {
            return Err(RingError::MalformedTable(format!(
                "{name} table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(pos) = table.iter().position(|e| e.index() >= order) {
            return Err(RingError::MalformedTable(format!(
                "{name} table entry ({}, {}) = {} is not an element id",
                pos / order,
                pos % order,
                table[pos]
            )));
        }
    }
    let t = Tables { n: order, add, mul };

    let zero = t
        .identity(|a, b| t.add(a, b))
        .map_err(|(e, x)| violation(Axiom::AdditiveIdentity, &[e, x]))?;
    let mut neg = Vec::with_capacity(order);
    for x in 0..order {
        match (0..order).find(|&y| t.add(x, y) == zero && t.add(y, x) == zero) {
            Some(y) => neg.push(ElementId::new(y)),
            None => return Err(violation(Axiom::AdditiveInverse, &[x])),
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            if t.add(x, y) != t.add(y, x) {
                return Err(violation(Axiom::AdditiveCommutativity, &[x, y]));
            }
        }
    }
    let one = t
        .identity(|a, b| t.mul(a, b))
        .map_err(|(e, x)| violation(Axiom::MultiplicativeIdentity, &[e, x]))?;

    if coverage == Coverage::Exhaustive || order <= EXHAUSTIVE_LIMIT {
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if let Some(axiom) = t.check_triple(x, y, z) {
                        return Err(violation(axiom, &[x, y, z]));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (
                rng.random_range(0..order),
                rng.random_range(0..order),
                rng.random_range(0..order),
            );
            if let Some(axiom) = t.check_triple(x, y, z) {
                return Err(violation(axiom, &[x, y, z]));
            }
        }
    }
    Ok((ElementId::new(zero), neg, ElementId::new(one)))
}

pub(crate) fn build_ring(
    order: usize,
    add: Vec<ElementId>,
    mul: Vec<ElementId>,
    label: String,
    layout: Layout,
    coverage: Coverage,
) -> Result<FiniteRing> {
    let (zero, neg, one) = validate_tables(order, &add, &mul, coverage)?;
    Ok(FiniteRing::from_validated(
        order, add, mul, neg, zero, one, label, layout,
    ))
}

/// Re-runs the complete exhaustive axiom check on a constructed ring.
pub fn validate_ring(ring: &FiniteRing) -> Result<()> {
    let (zero, neg, one) = validate_tables(
        ring.order(),
        ring.add_table(),
        ring.mul_table(),
        Coverage::Exhaustive,
    )?;
    let consistent = zero == ring.zero()
        && one == ring.one()
        && ring.elements().zip(&neg).all(|(x, &y)| ring.neg(x) == y);
    if consistent {
        Ok(())
    } else {
        Err(RingError::MalformedTable(
            "stored zero, one or negation disagrees with the tables".into(),
        ))
    }
}

/// Checks the involution axioms exhaustively, returning the first failure
/// with the smallest witness.
pub fn validate_involution(ring: &FiniteRing, star: &[ElementId]) -> Result<()> {
    let n = ring.order();
    let fail = |axiom, witness: Vec<ElementId>| RingError::InvolutionViolation { axiom, witness };
    if star.len() != n {
        return Err(RingError::MalformedTable(format!(
            "involution table has {} entries, expected {n}",
            star.len()
        )));
    }
    let mut seen = vec![false; n];
    for (x, &s) in star.iter().enumerate() {
        if s.index() >= n {
            return Err(RingError::ElementOutOfRange { id: s, order: n });
        }
        if std::mem::replace(&mut seen[s.index()], true) {
            let first = star.iter().position(|&t| t == s).unwrap_or(x);
            return Err(fail(
                InvolutionAxiom::Permutation,
                vec![ElementId::new(first), ElementId::new(x)],
            ));
        }
    }
    let st = |x: ElementId| star[x.index()];
    for x in ring.elements() {
        if st(st(x)) != x {
            return Err(fail(InvolutionAxiom::SelfInverse, vec![x]));
        }
    }
    if st(ring.zero()) != ring.zero() {
        return Err(fail(InvolutionAxiom::FixesZero, vec![ring.zero()]));
    }
    if st(ring.one()) != ring.one() {
        return Err(fail(InvolutionAxiom::FixesOne, vec![ring.one()]));
    }
    for x in ring.elements() {
        for y in ring.elements() {
            if st(ring.add(x, y)) != ring.add(st(x), st(y)) {
                return Err(fail(InvolutionAxiom::Additive, vec![x, y]));
            }
            if st(ring.mul(x, y)) != ring.mul(st(y), st(x)) {
                return Err(fail(InvolutionAxiom::AntiMultiplicative, vec![x, y]));
            }
        }
    }
    Ok(())
}
