//! Element-level witness searches and ring-level predicates.
//!
//! Every search scans candidates in ascending id order, so witnesses are the
//! lexicographically smallest `(first, second)` pair and counterexamples are
//! the smallest failing element. Witness pairs are always stored as
//! `(idempotent or projection, unit)`; the mode fixes the equation.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::ring::{ElementId, FiniteRing};
use crate::sets::{annihilator, principal_ideal, Side, StructureSets};
use crate::star::StarRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionMode {
    /// `a = e + u`
    Clean,
    /// `a = e + u`, `eu = ue`
    StronglyClean,
    /// `a = p + u`
    StarClean,
    /// `a = p + u`, `pu = up`
    StronglyStarClean,
}

kebab_names!(DecompositionMode {
    Clean => "clean",
    StronglyClean => "strongly-clean",
    StarClean => "star-clean",
    StronglyStarClean => "strongly-star-clean",
});

impl DecompositionMode {
    fn uses_projections(self) -> bool {
        matches!(self, Self::StarClean | Self::StronglyStarClean)
    }

    fn strong(self) -> bool {
        matches!(self, Self::StronglyClean | Self::StronglyStarClean)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorizationMode {
    /// `a = pu`
    Pu,
    /// `a = up`, unit on the left
    Up,
    /// `a = pu = up`
    PuTwoSided,
    /// `a = eu = ue` with `e` idempotent
    EuTwoSided,
}

kebab_names!(FactorizationMode {
    Pu => "pu",
    Up => "up",
    PuTwoSided => "pu-two-sided",
    EuTwoSided => "eu-two-sided",
});

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessMode {
    Decomposition(DecompositionMode),
    Factorization(FactorizationMode),
}

impl From<DecompositionMode> for WitnessMode {
    fn from(m: DecompositionMode) -> Self {
        WitnessMode::Decomposition(m)
    }
}

impl From<FactorizationMode> for WitnessMode {
    fn from(m: FactorizationMode) -> Self {
        WitnessMode::Factorization(m)
    }
}

impl std::fmt::Display for WitnessMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessMode::Decomposition(m) => m.fmt(f),
            WitnessMode::Factorization(m) => m.fmt(f),
        }
    }
}

/// A decomposition or factorization certificate, or a record that the
/// search was exhausted without finding one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub mode: WitnessMode,
    pub parts: Option<(ElementId, ElementId)>,
    pub exhausted: bool,
}

impl Witness {
    fn found(mode: impl Into<WitnessMode>, first: ElementId, second: ElementId) -> Self {
        Witness {
            mode: mode.into(),
            parts: Some((first, second)),
            exhausted: false,
        }
    }

    fn none(mode: impl Into<WitnessMode>) -> Self {
        Witness {
            mode: mode.into(),
            parts: None,
            exhausted: true,
        }
    }

    pub fn exists(&self) -> bool {
        self.parts.is_some()
    }

    /// Re-checks the defining equations of the mode by direct table lookups,
    /// without consulting any cached set.
    pub fn verify(&self, s: &StarRing, a: ElementId) -> bool {
        let Some((e, u)) = self.parts else {
            return self.exhausted;
        };
        let r = s.ring();
        let idempotent = r.mul(e, e) == e;
        let projection = idempotent && s.star(e) == e;
        let unit = r
            .elements()
            .any(|v| r.mul(u, v) == r.one() && r.mul(v, u) == r.one());
        unit && match self.mode {
            WitnessMode::Decomposition(m) => {
                r.add(e, u) == a
                    && if m.uses_projections() {
                        projection
                    } else {
                        idempotent
                    }
                    && (!m.strong() || r.commutes(e, u))
            }
            WitnessMode::Factorization(m) => match m {
                FactorizationMode::Pu => projection && r.mul(e, u) == a,
                FactorizationMode::Up => projection && r.mul(u, e) == a,
                FactorizationMode::PuTwoSided => projection && r.mul(e, u) == a && r.mul(u, e) == a,
                FactorizationMode::EuTwoSided => idempotent && r.mul(e, u) == a && r.mul(u, e) == a,
            },
        }
    }
}

fn decompose(s: &StarRing, sets: &StructureSets, a: ElementId, mode: DecompositionMode) -> Witness {
    let r = s.ring();
    let candidates = if mode.uses_projections() {
        &sets.projections
    } else {
        &sets.idempotents
    };
    for &e in candidates {
        let u = r.sub(a, e);
        if sets.is_unit(u) && (!mode.strong() || r.commutes(e, u)) {
            return Witness::found(mode, e, u);
        }
    }
    Witness::none(mode)
}

/// Smallest `(e, u)` with `a = e + u` satisfying `mode`. The unit is fixed by
/// `e`, so scanning `e` in order yields the lexicographically smallest pair.
pub fn decomposition_witness(s: &StarRing, a: ElementId, mode: DecompositionMode) -> Witness {
    decompose(s, s.sets(), a, mode)
}

fn factor(s: &StarRing, sets: &StructureSets, a: ElementId, mode: FactorizationMode) -> Witness {
    let r = s.ring();
    let mut best: Option<(ElementId, ElementId)> = None;
    for &u in &sets.units {
        let inv = sets.inverse_of(u).expect("units carry inverses");
        // the non-unit factor is forced by u
        let e = match mode {
            FactorizationMode::Up => r.mul(inv, a),
            _ => r.mul(a, inv),
        };
        let ok = match mode {
            FactorizationMode::Pu | FactorizationMode::Up => sets.is_projection(e),
            FactorizationMode::PuTwoSided => sets.is_projection(e) && r.mul(u, e) == a,
            FactorizationMode::EuTwoSided => sets.is_idempotent(e) && r.mul(u, e) == a,
        };
        // among equal first factors the identity is preferred as the unit
        let rank = |(e, u): (ElementId, ElementId)| (e, u != r.one(), u);
        if ok && best.map_or(true, |b| rank((e, u)) < rank(b)) {
            best = Some((e, u));
        }
    }
    match best {
        Some((e, u)) => Witness::found(mode, e, u),
        None => Witness::none(mode),
    }
}

/// Smallest `(p, u)` (or `(e, u)`) factoring `a` as `mode` requires, ordered
/// by `p` first and then by `u` with the identity ranked lowest.
pub fn factorization_witness(s: &StarRing, a: ElementId, mode: FactorizationMode) -> Witness {
    factor(s, s.sets(), a, mode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateName {
    Clean,
    StronglyClean,
    StarClean,
    StronglyStarClean,
    Regular,
    UnitRegular,
    StronglyRegular,
    ProperInvolution,
    StarRegular,
    StarUnitRegular,
    RightPInjective,
    StableRangeOne,
    Abelian,
    StarAbelian,
    Boolean,
    /// Decided as: the non-units are closed under addition and under
    /// multiplication by arbitrary elements on both sides.
    Local,
}

kebab_names!(PredicateName {
    Clean => "clean",
    StronglyClean => "strongly-clean",
    StarClean => "star-clean",
    StronglyStarClean => "strongly-star-clean",
    Regular => "regular",
    UnitRegular => "unit-regular",
    StronglyRegular => "strongly-regular",
    ProperInvolution => "proper-involution",
    StarRegular => "star-regular",
    StarUnitRegular => "star-unit-regular",
    RightPInjective => "right-p-injective",
    StableRangeOne => "stable-range-one",
    Abelian => "abelian",
    StarAbelian => "star-abelian",
    Boolean => "boolean",
    Local => "local",
});

/// Outcome of a ring-level check. When the check fails, `counterexample`
/// holds the smallest failing element, or the smallest failing tuple for
/// checks quantified over several elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateVerdict {
    pub holds: bool,
    pub counterexample: Vec<ElementId>,
}

impl PredicateVerdict {
    fn pass() -> Self {
        PredicateVerdict {
            holds: true,
            counterexample: Vec::new(),
        }
    }

    fn fail(counterexample: Vec<ElementId>) -> Self {
        PredicateVerdict {
            holds: false,
            counterexample,
        }
    }

    fn from_first_failure(failure: Option<Vec<ElementId>>) -> Self {
        failure.map_or_else(Self::pass, Self::fail)
    }

    fn and(self, other: impl FnOnce() -> Self) -> Self {
        if self.holds {
            other()
        } else {
            self
        }
    }
}

/// Ring-level conditions that the classifier can decide and memoize. Beyond
/// the named predicates these are the auxiliary conditions appearing in the
/// equivalence checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Predicate(PredicateName),
    /// Every element has a factorization witness of the given mode.
    EveryElementFactors(FactorizationMode),
    /// `Ra = R a*a` for every `a`.
    LeftIdealOfNorm,
    /// Every principal right ideal `xR` equals `pR` for a projection `p`.
    ProjectionGeneratedRightIdeals,
    /// Every `a` is `p + u` with `aR ∩ pR = 0`.
    ProjectionSumDisjointIdeal,
}

impl Condition {
    const COUNT: usize = PredicateName::ALL.len() + FactorizationMode::ALL.len() + 3;

    fn slot(self) -> usize {
        let np = PredicateName::ALL.len();
        let nf = FactorizationMode::ALL.len();
        match self {
            Condition::Predicate(p) => p as usize,
            Condition::EveryElementFactors(m) => np + m as usize,
            Condition::LeftIdealOfNorm => np + nf,
            Condition::ProjectionGeneratedRightIdeals => np + nf + 1,
            Condition::ProjectionSumDisjointIdeal => np + nf + 2,
        }
    }
}

/// Decides predicates for one *-ring, memoizing each verdict and the table
/// of principal right ideals.
pub struct Classifier<'r> {
    s: &'r StarRing,
    memo: Vec<OnceLock<PredicateVerdict>>,
    right_ideals: OnceLock<Vec<Vec<ElementId>>>,
}

impl<'r> Classifier<'r> {
    pub fn new(s: &'r StarRing) -> Self {
        Classifier {
            s,
            memo: (0..Condition::COUNT).map(|_| OnceLock::new()).collect(),
            right_ideals: OnceLock::new(),
        }
    }

    pub fn star_ring(&self) -> &'r StarRing {
        self.s
    }

    pub fn verdict(&self, name: PredicateName) -> PredicateVerdict {
        self.condition(Condition::Predicate(name))
    }

    pub fn holds(&self, name: PredicateName) -> bool {
        self.verdict(name).holds
    }

    pub fn condition(&self, c: Condition) -> PredicateVerdict {
        self.memo[c.slot()].get_or_init(|| self.decide(c)).clone()
    }

    fn ring(&self) -> &'r FiniteRing {
        self.s.ring()
    }

    fn sets(&self) -> &'r StructureSets {
        self.s.sets()
    }

    /// `aR` for every `a`, sorted.
    pub fn right_ideal(&self, a: ElementId) -> &[ElementId] {
        &self.right_ideals.get_or_init(|| {
            self.ring()
                .elements()
                .map(|a| principal_ideal(self.ring(), a, Side::Right))
                .collect()
        })[a.index()]
    }

    fn every_element(&self, ok: impl Fn(ElementId) -> bool) -> PredicateVerdict {
        PredicateVerdict::from_first_failure(
            self.ring().elements().find(|&a| !ok(a)).map(|a| vec![a]),
        )
    }

    fn decide(&self, c: Condition) -> PredicateVerdict {
        let r = self.ring();
        let sets = self.sets();
        let s = self.s;
        match c {
            Condition::Predicate(p) => self.decide_predicate(p),
            Condition::EveryElementFactors(mode) => {
                self.every_element(|a| factor(s, sets, a, mode).exists())
            }
            Condition::LeftIdealOfNorm => self.every_element(|a| {
                principal_ideal(r, a, Side::Left)
                    == principal_ideal(r, r.mul(s.star(a), a), Side::Left)
            }),
            Condition::ProjectionGeneratedRightIdeals => self.every_element(|x| {
                let ideal = self.right_ideal(x);
                sets.projections
                    .iter()
                    .any(|&p| self.right_ideal(p) == ideal)
            }),
            Condition::ProjectionSumDisjointIdeal => self.every_element(|a| {
                let ar = self.right_ideal(a);
                sets.projections.iter().any(|&p| {
                    sets.is_unit(r.sub(a, p))
                        && self
                            .right_ideal(p)
                            .iter()
                            .all(|x| *x == r.zero() || ar.binary_search(x).is_err())
                })
            }),
        }
    }

    fn decide_predicate(&self, name: PredicateName) -> PredicateVerdict {
        use PredicateName::*;
        let r = self.ring();
        let sets = self.sets();
        let s = self.s;
        let decomposable = |mode| self.every_element(|a| decompose(s, sets, a, mode).exists());
        match name {
            Clean => decomposable(DecompositionMode::Clean),
            StronglyClean => decomposable(DecompositionMode::StronglyClean),
            StarClean => decomposable(DecompositionMode::StarClean),
            StronglyStarClean => decomposable(DecompositionMode::StronglyStarClean),
            Regular => self.every_element(|a| r.elements().any(|x| r.mul(r.mul(a, x), a) == a)),
            UnitRegular => {
                self.every_element(|a| sets.units.iter().any(|&u| r.mul(r.mul(a, u), a) == a))
            }
            StronglyRegular => self.condition(Condition::EveryElementFactors(
                FactorizationMode::EuTwoSided,
            )),
            ProperInvolution => PredicateVerdict::from_first_failure(
                r.elements()
                    .find(|&x| x != r.zero() && r.mul(s.star(x), x) == r.zero())
                    .map(|x| vec![x]),
            ),
            StarRegular => self.verdict(Regular).and(|| self.verdict(ProperInvolution)),
            StarUnitRegular => {
                self.condition(Condition::EveryElementFactors(FactorizationMode::Pu))
            }
            RightPInjective => self.every_element(|a| {
                let ra = annihilator(r, &[a], Side::Right);
                annihilator(r, &ra, Side::Left) == principal_ideal(r, a, Side::Left)
            }),
            StableRangeOne => self.stable_range_one(),
            Abelian => central_failure(r, &sets.idempotents),
            StarAbelian => central_failure(r, &sets.projections),
            Boolean => self.every_element(|x| sets.is_idempotent(x)),
            Local => self.local(),
        }
    }

    fn stable_range_one(&self) -> PredicateVerdict {
        let r = self.ring();
        let sets = self.sets();
        let n = r.order();
        let mut cover = vec![false; n];
        for a in r.elements() {
            for b in r.elements() {
                if r.elements().any(|t| sets.is_unit(r.add(a, r.mul(b, t)))) {
                    continue;
                }
                // no t works, so aR + bR must fall short of R
                cover.iter_mut().for_each(|c| *c = false);
                for &x in self.right_ideal(a) {
                    for &y in self.right_ideal(b) {
                        cover[r.add(x, y).index()] = true;
                    }
                }
                if cover.iter().all(|&c| c) {
                    return PredicateVerdict::fail(vec![a, b]);
                }
            }
        }
        PredicateVerdict::pass()
    }

    fn local(&self) -> PredicateVerdict {
        let r = self.ring();
        let sets = self.sets();
        let non_units: Vec<ElementId> = r.elements().filter(|&x| !sets.is_unit(x)).collect();
        for &x in &non_units {
            for y in r.elements() {
                let sum_escapes = !sets.is_unit(y) && sets.is_unit(r.add(x, y));
                if sum_escapes || sets.is_unit(r.mul(x, y)) || sets.is_unit(r.mul(y, x)) {
                    return PredicateVerdict::fail(vec![x, y]);
                }
            }
        }
        PredicateVerdict::pass()
    }

    /// Every named predicate, in declaration order.
    pub fn report(&self) -> ClassificationReport {
        let predicates: BTreeMap<PredicateName, PredicateVerdict> = PredicateName::ALL
            .iter()
            .map(|&p| (p, self.verdict(p)))
            .collect();
        let sets = self.sets();
        let report = ClassificationReport {
            ring: self.s.label(),
            order: self.s.order(),
            idempotents: sets.idempotents.len(),
            projections: sets.projections.len(),
            units: sets.units.len(),
            predicates,
        };
        assert!(
            report.diagram_consistent(),
            "clean-family verdicts contradict the implication diagram for {}",
            report.ring
        );
        report
    }
}

fn central_failure(r: &FiniteRing, candidates: &[ElementId]) -> PredicateVerdict {
    for &e in candidates {
        if let Some(x) = r.elements().find(|&x| !r.commutes(e, x)) {
            return PredicateVerdict::fail(vec![e, x]);
        }
    }
    PredicateVerdict::pass()
}

/// Decides one predicate from scratch (no shared memo).
pub fn is_predicate(s: &StarRing, name: PredicateName) -> PredicateVerdict {
    Classifier::new(s).verdict(name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub order: usize,
    pub idempotents: usize,
    pub projections: usize,
    pub units: usize,
    pub predicates: BTreeMap<PredicateName, PredicateVerdict>,
}

impl ClassificationReport {
    pub fn holds(&self, name: PredicateName) -> bool {
        self.predicates.get(&name).is_some_and(|v| v.holds)
    }

    /// strongly *-clean => *-clean => clean, strongly *-clean => strongly
    /// clean => clean.
    pub fn diagram_consistent(&self) -> bool {
        use PredicateName::*;
        let implies = |a, b| !self.holds(a) || self.holds(b);
        implies(StronglyStarClean, StarClean)
            && implies(StronglyStarClean, StronglyClean)
            && implies(StarClean, Clean)
            && implies(StronglyClean, Clean)
    }
}

pub fn classify_ring(s: &StarRing) -> ClassificationReport {
    Classifier::new(s).report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_zmod, matrix_unit, BuildConfig};
    use crate::ring::MatrixShape;

    fn zid(n: usize) -> StarRing {
        StarRing::with_identity(make_zmod(n).unwrap()).unwrap()
    }

    fn m2z2() -> StarRing {
        StarRing::matrix(&zid(2), 2, &BuildConfig::default()).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let swap = StarRing::swap_product(&make_zmod(2).unwrap(), &BuildConfig::default()).unwrap();
        // (1,0)
        let w = decomposition_witness(&swap, ElementId(2), DecompositionMode::StarClean);
        assert!(w.exhausted && w.parts.is_none());

        let w = decomposition_witness(&zid(4), ElementId(2), DecompositionMode::StronglyStarClean);
        assert_eq!(w.parts, Some((ElementId(1), ElementId(1))));

        let w = decomposition_witness(&zid(2), ElementId(0), DecompositionMode::Clean);
        // e = 0 fails (0 is not a unit) so e = 1, u = -1 = 1
        assert_eq!(w.parts, Some((ElementId(1), ElementId(1))));
    }

    #[test]
    fn factorization_examples() {
        let w = factorization_witness(&zid(3), ElementId(2), FactorizationMode::Pu);
        assert_eq!(w.parts, Some((ElementId(1), ElementId(2))));
        for s in [zid(3), zid(4), m2z2()] {
            let w = factorization_witness(&s, s.ring().zero(), FactorizationMode::Pu);
            assert_eq!(w.parts, Some((s.ring().zero(), s.ring().one())));
        }
        let a = MatrixShape::new(2, 2).encode(&[
            ElementId(1),
            ElementId(0),
            ElementId(1),
            ElementId(0),
        ]);
        let w = factorization_witness(&m2z2(), a, FactorizationMode::Pu);
        assert!(w.exhausted);
    }

    #[test]
    fn witnesses_reverify() {
        let s = m2z2();
        for a in s.ring().elements() {
            for &m in DecompositionMode::ALL {
                let w = decomposition_witness(&s, a, m);
                assert!(w.verify(&s, a), "{m} at {a}");
            }
            for &m in FactorizationMode::ALL {
                let w = factorization_witness(&s, a, m);
                assert!(w.verify(&s, a), "{m} at {a}");
            }
        }
    }

    #[test]
    fn z4_predicates() {
        let s = zid(4);
        let regular = is_predicate(&s, PredicateName::Regular);
        assert_eq!(regular, PredicateVerdict::fail(vec![ElementId(2)]));
        assert!(is_predicate(&s, PredicateName::Local).holds);
        assert!(!is_predicate(&s, PredicateName::ProperInvolution).holds);
        assert!(is_predicate(&s, PredicateName::StableRangeOne).holds);
        assert!(!is_predicate(&zid(6), PredicateName::Local).holds);
    }

    #[test]
    fn m2z2_proper_counterwitness() {
        let s = m2z2();
        let v = is_predicate(&s, PredicateName::ProperInvolution);
        assert!(!v.holds);
        let x = v.counterexample[0];
        assert_eq!(s.ring().format_element(x), "[[1,0],[1,0]]");
        assert_eq!(s.ring().mul(s.star(x), x), s.ring().zero());
        let abelian = is_predicate(&s, PredicateName::Abelian);
        assert!(!abelian.holds);
        let (e, x) = (abelian.counterexample[0], abelian.counterexample[1]);
        assert!(s.sets().is_idempotent(e) && !s.ring().commutes(e, x));
        // E11 is the smallest non-central idempotent
        assert_eq!(e, matrix_unit(&make_zmod(2).unwrap(), 2, 1, 1));
    }

    #[test]
    fn trivial_ring_satisfies_everything() {
        let report = classify_ring(&zid(1));
        for (name, v) in &report.predicates {
            assert!(v.holds, "{name}");
        }
    }

    #[test]
    fn memo_does_not_change_verdicts() {
        let s = m2z2();
        let warm = Classifier::new(&s);
        for &p in PredicateName::ALL {
            let first = warm.verdict(p);
            assert_eq!(first, warm.verdict(p));
            assert_eq!(first, is_predicate(&s, p), "{p}");
        }
    }

    #[test]
    fn predicate_names_parse() {
        for &p in PredicateName::ALL {
            assert_eq!(p.name().parse::<PredicateName>(), Ok(p));
        }
        assert!("nonsense".parse::<PredicateName>().is_err());
    }
}
