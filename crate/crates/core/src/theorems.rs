//! Mechanical checks of the structural results on *-rings, run over a corpus.
//!
//! Equivalences evaluate every side independently and compare the verdicts;
//! implications whose hypothesis fails are reported as vacuously verified.
//! A violation always carries concrete element ids.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    decomposition_witness, Classifier, Condition, DecompositionMode, FactorizationMode,
    PredicateName, PredicateVerdict,
};
use crate::construct::{make_zmod, matrix_unit, BuildConfig};
use crate::corpus::CorpusEntry;
use crate::ring::{ElementId, FiniteRing};
use crate::star::{make_corner_ring, StarRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `a ∈ pRp` is strongly *-clean in `R` iff it is in `pRp`.
    ThmCorner,
    /// Corners of strongly *-clean rings are strongly *-clean.
    CorCorner,
    /// Strongly *-clean iff strongly clean with `P(R) = Id(R)`.
    ThmChar,
    /// `M_n(R)` is never strongly *-clean for `n >= 2`.
    CorMatrix,
    /// `Z2 x Z2` with the swap: strongly clean, not *-clean.
    ExSwap,
    /// Regular + proper iff right P-injective + proper iff `Ra = Ra*a`.
    PropPinj,
    /// The four characterizations of strongly regular with proper involution.
    PropSreg,
    /// The four characterizations of *-unit regular rings.
    ThmSur,
    /// `M_n(R)` is *-unit regular iff `R` is unit regular and
    /// `Σ a_i* a_i = 0` forces every `a_i = 0`.
    PropMatrixSur,
    /// `M2(Z2)` with transpose is not *-unit regular.
    ExM2z2,
    /// Corners of *-unit regular rings are *-unit regular.
    PropCornerSur,
}

kebab_names!(TheoremId {
    ThmCorner => "thm-corner",
    CorCorner => "cor-corner",
    ThmChar => "thm-char",
    CorMatrix => "cor-matrix",
    ExSwap => "ex-swap",
    PropPinj => "prop-pinj",
    PropSreg => "prop-sreg",
    ThmSur => "thm-sur",
    PropMatrixSur => "prop-matrix-sur",
    ExM2z2 => "ex-m2z2",
    PropCornerSur => "prop-corner-sur",
});

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimParams {
    /// Matrix size for the matrix claims.
    pub n: usize,
    pub cfg: BuildConfig,
}

impl Default for ClaimParams {
    fn default() -> Self {
        ClaimParams {
            n: 2,
            cfg: BuildConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ClaimVerdict {
    Verified {
        vacuous: bool,
        detail: String,
    },
    Violated {
        witness: Vec<ElementId>,
        detail: String,
    },
    Skipped {
        reason: String,
    },
}

impl ClaimVerdict {
    fn verified(detail: impl Into<String>) -> Self {
        ClaimVerdict::Verified {
            vacuous: false,
            detail: detail.into(),
        }
    }

    fn vacuous(detail: impl Into<String>) -> Self {
        ClaimVerdict::Verified {
            vacuous: true,
            detail: detail.into(),
        }
    }

    fn violated(witness: Vec<ElementId>, detail: impl Into<String>) -> Self {
        ClaimVerdict::Violated {
            witness,
            detail: detail.into(),
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, ClaimVerdict::Violated { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, ClaimVerdict::Verified { .. })
    }
}

type Side = (&'static str, PredicateVerdict);

fn equivalence(sides: &[Side]) -> ClaimVerdict {
    let first = sides[0].1.holds;
    if sides.iter().all(|(_, v)| v.holds == first) {
        let state = if first { "hold" } else { "fail" };
        return ClaimVerdict::verified(format!("all {} conditions {state}", sides.len()));
    }
    let listing: Vec<String> = sides
        .iter()
        .map(|(name, v)| format!("{name}={}", if v.holds { "T" } else { "F" }))
        .collect();
    let witness = sides
        .iter()
        .find(|(_, v)| !v.holds)
        .map(|(_, v)| v.counterexample.clone())
        .unwrap_or_default();
    ClaimVerdict::violated(
        witness,
        format!("conditions disagree: {}", listing.join(", ")),
    )
}

fn both(a: PredicateVerdict, b: impl FnOnce() -> PredicateVerdict) -> PredicateVerdict {
    if a.holds {
        b()
    } else {
        a
    }
}

/// `P(R) = Id(R)`, failing at the smallest non-self-adjoint idempotent.
fn projections_are_idempotents(s: &StarRing) -> PredicateVerdict {
    let sets = s.sets();
    match sets.idempotents.iter().find(|&&e| !sets.is_projection(e)) {
        Some(&e) => PredicateVerdict {
            holds: false,
            counterexample: vec![e],
        },
        None => PredicateVerdict {
            holds: true,
            counterexample: Vec::new(),
        },
    }
}

/// No nonzero tuple `(a_1..a_n)` has `Σ a_i* a_i = 0`.
pub fn norm_sum_condition(s: &StarRing, n: usize) -> PredicateVerdict {
    let r = s.ring();
    let order = r.order();
    let total = order
        .checked_pow(n as u32)
        .expect("tuple count fits in usize");
    for code in 1..total {
        let mut rest = code;
        let mut sum = r.zero();
        let mut tuple = Vec::with_capacity(n);
        for _ in 0..n {
            let a = ElementId::new(rest % order);
            rest /= order;
            tuple.push(a);
            sum = r.add(sum, r.mul(s.star(a), a));
        }
        if sum == r.zero() && tuple.iter().any(|&a| a != r.zero()) {
            return PredicateVerdict {
                holds: false,
                counterexample: tuple,
            };
        }
    }
    PredicateVerdict {
        holds: true,
        counterexample: Vec::new(),
    }
}

fn swap_reference() -> StarRing {
    StarRing::swap_product(&make_zmod(2).expect("Z2"), &BuildConfig::default()).expect("swap ring")
}

fn m2z2_reference() -> StarRing {
    let z2 = StarRing::with_identity(make_zmod(2).expect("Z2")).expect("Z2");
    StarRing::matrix(&z2, 2, &BuildConfig::default()).expect("M2(Z2)")
}

/// Whether a claim concerns `s` at all; the worked examples only apply to
/// their own ring.
pub fn applies(id: TheoremId, s: &StarRing) -> bool {
    match id {
        TheoremId::ExSwap => *s == swap_reference(),
        TheoremId::ExM2z2 => *s == m2z2_reference(),
        _ => true,
    }
}

pub fn check_claim(s: &StarRing, id: TheoremId, params: &ClaimParams) -> ClaimVerdict {
    check_claim_with(&Classifier::new(s), id, params)
}

/// As [`check_claim`], sharing the classifier's memoized verdicts.
pub fn check_claim_with(cl: &Classifier<'_>, id: TheoremId, params: &ClaimParams) -> ClaimVerdict {
    use PredicateName::*;
    let s = cl.star_ring();
    if !applies(id, s) {
        let target = match id {
            TheoremId::ExSwap => "Z2 x Z2 with the swap involution",
            _ => "M2(Z2) with the transpose involution",
        };
        return ClaimVerdict::Skipped {
            reason: format!("{id} only concerns {target}"),
        };
    }
    let v = |p| cl.verdict(p);
    match id {
        TheoremId::ThmCorner => corner_transfer(s),
        TheoremId::CorCorner => corner_implication(cl, StronglyStarClean),
        TheoremId::PropCornerSur => corner_implication(cl, StarUnitRegular),
        TheoremId::ThmChar => equivalence(&[
            ("strongly-star-clean", v(StronglyStarClean)),
            (
                "strongly-clean and P=Id",
                both(v(StronglyClean), || projections_are_idempotents(s)),
            ),
        ]),
        TheoremId::PropPinj => equivalence(&[
            (
                "regular and proper",
                both(v(Regular), || v(ProperInvolution)),
            ),
            (
                "right-p-injective and proper",
                both(v(RightPInjective), || v(ProperInvolution)),
            ),
            ("Ra = Ra*a", cl.condition(Condition::LeftIdealOfNorm)),
            (
                "xR = pR",
                cl.condition(Condition::ProjectionGeneratedRightIdeals),
            ),
        ]),
        TheoremId::PropSreg => equivalence(&[
            (
                "strongly-regular and proper",
                both(v(StronglyRegular), || v(ProperInvolution)),
            ),
            (
                "strongly-regular and P=Id",
                both(v(StronglyRegular), || projections_are_idempotents(s)),
            ),
            (
                "star-abelian and a=p+u with aR∩pR=0",
                both(v(StarAbelian), || {
                    cl.condition(Condition::ProjectionSumDisjointIdeal)
                }),
            ),
            (
                "a=pu=up",
                cl.condition(Condition::EveryElementFactors(
                    FactorizationMode::PuTwoSided,
                )),
            ),
        ]),
        TheoremId::ThmSur => equivalence(&[
            (
                "unit-regular and proper",
                both(v(UnitRegular), || v(ProperInvolution)),
            ),
            (
                "unit-regular and star-regular",
                both(v(UnitRegular), || v(StarRegular)),
            ),
            (
                "a=pu",
                cl.condition(Condition::EveryElementFactors(FactorizationMode::Pu)),
            ),
            (
                "a=vq",
                cl.condition(Condition::EveryElementFactors(FactorizationMode::Up)),
            ),
        ]),
        TheoremId::CorMatrix => matrix_not_strongly_star_clean(s, params),
        TheoremId::PropMatrixSur => matrix_star_unit_regular(cl, params),
        TheoremId::ExSwap => {
            let sets = s.sets();
            let expected_projections = [s.ring().zero(), s.ring().one()];
            let checks = [
                ("clean", v(Clean).holds),
                ("strongly-clean", v(StronglyClean).holds),
                ("boolean", v(Boolean).holds),
                (
                    "P = {(0,0),(1,1)}",
                    sets.projections == expected_projections,
                ),
                ("not star-clean", !v(StarClean).holds),
                ("not strongly-star-clean", !v(StronglyStarClean).holds),
            ];
            match checks.iter().find(|(_, ok)| !ok) {
                None => ClaimVerdict::verified(
                    "strongly clean and boolean; P(R) = {(0,0),(1,1)}; (1,0) is not *-clean",
                ),
                Some((what, _)) => {
                    ClaimVerdict::violated(v(StarClean).counterexample, format!("expected {what}"))
                }
            }
        }
        TheoremId::ExM2z2 => {
            let proper = v(ProperInvolution);
            let sur = v(StarUnitRegular);
            let r = s.ring();
            let zero_norm = proper
                .counterexample
                .first()
                .is_some_and(|&x| x != r.zero() && r.mul(s.star(x), x) == r.zero());
            if !proper.holds && zero_norm && !sur.holds {
                ClaimVerdict::verified(format!(
                    "x*x = 0 at x = {} and no pu factorization of {}",
                    ids(&proper.counterexample),
                    ids(&sur.counterexample)
                ))
            } else {
                ClaimVerdict::violated(
                    proper.counterexample,
                    format!(
                        "expected improper involution and not star-unit-regular (proper={}, star-unit-regular={})",
                        proper.holds, sur.holds
                    ),
                )
            }
        }
    }
}

fn ids(v: &[ElementId]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Elementwise comparison of strong *-cleanness in `R` and in `pRp` for every
/// projection `p`. A corner witness is also lifted to `R` as `e + (1-p)`,
/// `u - (1-p)` and re-verified there.
fn corner_transfer(s: &StarRing) -> ClaimVerdict {
    let r = s.ring();
    let mode = DecompositionMode::StronglyStarClean;
    let mut checked = 0usize;
    for &p in &s.sets().projections {
        let corner = match make_corner_ring(s, p) {
            Ok(c) => c,
            Err(e) => {
                return ClaimVerdict::violated(vec![p], format!("corner failed to build: {e}"))
            }
        };
        let complement = r.sub(r.one(), p);
        for (i, &a) in corner.embedding.iter().enumerate() {
            let in_ring = decomposition_witness(s, a, mode);
            let in_corner = decomposition_witness(&corner.ring, ElementId::new(i), mode);
            if in_ring.exists() != in_corner.exists() {
                return ClaimVerdict::violated(
                    vec![p, a],
                    format!(
                        "strongly star-clean in R: {}, in pRp: {}",
                        in_ring.exists(),
                        in_corner.exists()
                    ),
                );
            }
            if let Some((e, u)) = in_corner.parts {
                let f = r.add(corner.lift(e), complement);
                let v = r.sub(corner.lift(u), complement);
                let lifted = crate::classify::Witness {
                    mode: mode.into(),
                    parts: Some((f, v)),
                    exhausted: false,
                };
                if !lifted.verify(s, a) {
                    return ClaimVerdict::violated(
                        vec![p, a, f, v],
                        "lifted corner witness fails in R",
                    );
                }
            }
            checked += 1;
        }
    }
    ClaimVerdict::verified(format!(
        "{checked} corner elements agree across {} projections",
        s.sets().projections.len()
    ))
}

/// `name(R)` implies `name(pRp)` for every projection `p`.
fn corner_implication(cl: &Classifier<'_>, name: PredicateName) -> ClaimVerdict {
    let s = cl.star_ring();
    if !cl.holds(name) {
        return ClaimVerdict::vacuous(format!("ring is not {name}"));
    }
    for &p in &s.sets().projections {
        let corner = match make_corner_ring(s, p) {
            Ok(c) => c,
            Err(e) => {
                return ClaimVerdict::violated(vec![p], format!("corner failed to build: {e}"))
            }
        };
        let v = Classifier::new(&corner.ring).verdict(name);
        if !v.holds {
            let mut witness = vec![p];
            witness.extend(v.counterexample.iter().map(|&x| corner.lift(x)));
            return ClaimVerdict::violated(witness, format!("corner at p = {p} is not {name}"));
        }
    }
    ClaimVerdict::verified(format!(
        "all {} corners are {name}",
        s.sets().projections.len()
    ))
}

fn build_matrix(s: &StarRing, params: &ClaimParams) -> Result<StarRing, ClaimVerdict> {
    if params.n == 0 {
        return Err(ClaimVerdict::Skipped {
            reason: "matrix size must be at least 1".into(),
        });
    }
    StarRing::matrix(s, params.n, &params.cfg).map_err(|e| ClaimVerdict::Skipped {
        reason: e.to_string(),
    })
}

/// `E11 + E12` is an idempotent non-projection of `M_n(R)`, and `M_n(R)` is
/// not strongly *-clean.
fn matrix_not_strongly_star_clean(s: &StarRing, params: &ClaimParams) -> ClaimVerdict {
    if params.n < 2 {
        return ClaimVerdict::Skipped {
            reason: format!("needs n >= 2, got {}", params.n),
        };
    }
    if s.ring().is_trivial() {
        return ClaimVerdict::vacuous("zero ring: every matrix ring over it is the zero ring");
    }
    let m = match build_matrix(s, params) {
        Ok(m) => m,
        Err(skip) => return skip,
    };
    let base: &FiniteRing = s.ring();
    let mr = m.ring();
    let e = mr.add(
        matrix_unit(base, params.n, 1, 1),
        matrix_unit(base, params.n, 1, 2),
    );
    if mr.mul(e, e) != e || m.star(e) == e {
        return ClaimVerdict::violated(vec![e], "E11 + E12 should be an idempotent non-projection");
    }
    let v = Classifier::new(&m).verdict(PredicateName::StronglyStarClean);
    if v.holds {
        return ClaimVerdict::violated(vec![e], format!("M{}(R) is strongly star-clean", params.n));
    }
    ClaimVerdict::verified(format!(
        "E11+E12 = {e} is idempotent, not a projection; not strongly star-clean at {}",
        ids(&v.counterexample)
    ))
}

/// `M_n(R)` *-unit regular iff `R` unit regular with the norm-sum condition;
/// also properness of `M_n(R)` iff the norm-sum condition.
fn matrix_star_unit_regular(cl: &Classifier<'_>, params: &ClaimParams) -> ClaimVerdict {
    let s = cl.star_ring();
    let m = match build_matrix(s, params) {
        Ok(m) => m,
        Err(skip) => return skip,
    };
    let mcl = Classifier::new(&m);
    let sum = norm_sum_condition(s, params.n);
    let first = equivalence(&[
        (
            "M_n star-unit-regular",
            mcl.verdict(PredicateName::StarUnitRegular),
        ),
        (
            "unit-regular and norm sums vanish only at 0",
            both(cl.verdict(PredicateName::UnitRegular), || sum.clone()),
        ),
    ]);
    if first.is_violated() {
        return first;
    }
    let second = equivalence(&[
        ("M_n proper", mcl.verdict(PredicateName::ProperInvolution)),
        ("norm sums vanish only at 0", sum),
    ]);
    if second.is_violated() {
        return second;
    }
    let state = mcl.holds(PredicateName::StarUnitRegular);
    ClaimVerdict::verified(format!(
        "M{}(R) is {}star-unit-regular, both routes agree",
        params.n,
        if state { "" } else { "not " }
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCell {
    pub theorem: TheoremId,
    pub ring: String,
    pub verdict: ClaimVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub cells: Vec<SuiteCell>,
    pub verified: usize,
    pub violated: usize,
    pub skipped: usize,
}

impl SuiteReport {
    /// Sorts cells by `(theorem, ring)` and tallies them.
    pub fn from_cells(mut cells: Vec<SuiteCell>) -> Self {
        cells.sort_by(|a, b| (a.theorem, &a.ring).cmp(&(b.theorem, &b.ring)));
        let count = |f: fn(&ClaimVerdict) -> bool| cells.iter().filter(|c| f(&c.verdict)).count();
        SuiteReport {
            verified: count(ClaimVerdict::is_verified),
            violated: count(ClaimVerdict::is_violated),
            skipped: count(|v| matches!(v, ClaimVerdict::Skipped { .. })),
            cells,
        }
    }

    pub fn has_violation(&self) -> bool {
        self.violated > 0
    }
}

/// Runs every applicable claim on every corpus entry. Entries that failed to
/// build get a skipped cell per general claim carrying the build error.
pub fn run_claim_suite(corpus: &[CorpusEntry], params: &ClaimParams) -> SuiteReport {
    let cells: Vec<SuiteCell> = corpus
        .par_iter()
        .flat_map_iter(|entry| entry_cells(entry, params))
        .collect();
    SuiteReport::from_cells(cells)
}

fn entry_cells(entry: &CorpusEntry, params: &ClaimParams) -> Vec<SuiteCell> {
    let general = TheoremId::ALL
        .iter()
        .copied()
        .filter(|id| !matches!(id, TheoremId::ExSwap | TheoremId::ExM2z2));
    match &entry.ring {
        Err(e) => general
            .map(|theorem| SuiteCell {
                theorem,
                ring: entry.label.clone(),
                verdict: ClaimVerdict::Skipped {
                    reason: format!("entry failed to build: {e}"),
                },
            })
            .collect(),
        Ok(s) => {
            let cl = Classifier::new(s);
            TheoremId::ALL
                .iter()
                .copied()
                .filter(|&id| applies(id, s))
                .map(|theorem| SuiteCell {
                    theorem,
                    ring: entry.label.clone(),
                    verdict: check_claim_with(&cl, theorem, params),
                })
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub stronger: PredicateName,
    pub weaker: PredicateName,
    pub searched: usize,
    /// First ring, in corpus order, with `weaker` true and `stronger` false.
    pub found: Option<String>,
    /// Where `stronger` fails in the found ring.
    pub counterexample: Vec<ElementId>,
}

pub fn separation_search(
    corpus: &[CorpusEntry],
    stronger: PredicateName,
    weaker: PredicateName,
) -> SeparationReport {
    let built: Vec<(&str, &StarRing)> = corpus
        .iter()
        .filter_map(|e| e.ring.as_ref().ok().map(|r| (e.label.as_str(), r)))
        .collect();
    let hit = built.par_iter().find_map_first(|&(label, s)| {
        let cl = Classifier::new(s);
        if !cl.holds(weaker) {
            return None;
        }
        let v = cl.verdict(stronger);
        (!v.holds).then(|| (label.to_string(), v.counterexample))
    });
    let (found, counterexample) = match hit {
        Some((label, ce)) => (Some(label), ce),
        None => (None, Vec::new()),
    };
    SeparationReport {
        stronger,
        weaker,
        searched: built.len(),
        found,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zid(n: usize) -> StarRing {
        StarRing::with_identity(make_zmod(n).unwrap()).unwrap()
    }

    #[test]
    fn swap_ring_claims() {
        let s = swap_reference();
        let p = ClaimParams::default();
        assert_eq!(
            check_claim(&s, TheoremId::ThmChar, &p),
            ClaimVerdict::verified("all 2 conditions fail")
        );
        assert!(check_claim(&s, TheoremId::ExSwap, &p).is_verified());
        assert!(matches!(
            check_claim(&zid(2), TheoremId::ExSwap, &p),
            ClaimVerdict::Skipped { .. }
        ));
    }

    #[test]
    fn z4_pinj_all_false() {
        let v = check_claim(&zid(4), TheoremId::PropPinj, &ClaimParams::default());
        assert_eq!(v, ClaimVerdict::verified("all 4 conditions fail"));
    }

    #[test]
    fn z3_matrix_star_unit_regular() {
        let v = check_claim(&zid(3), TheoremId::PropMatrixSur, &ClaimParams::default());
        assert_eq!(
            v,
            ClaimVerdict::verified("M2(R) is star-unit-regular, both routes agree")
        );
    }

    #[test]
    fn norm_sums() {
        assert!(norm_sum_condition(&zid(3), 2).holds);
        let z2 = norm_sum_condition(&zid(2), 2);
        assert_eq!(z2.counterexample, vec![ElementId(1), ElementId(1)]);
        assert!(norm_sum_condition(&zid(2), 1).holds);
    }

    #[test]
    fn matrix_claims_skip_over_cap() {
        let params = ClaimParams {
            n: 2,
            cfg: BuildConfig::with_max_order(100),
        };
        let v = check_claim(&zid(4), TheoremId::CorMatrix, &params);
        assert_eq!(
            v,
            ClaimVerdict::Skipped {
                reason: "ring of order 256 exceeds the size cap of 100".into()
            }
        );
        assert!(check_claim(&zid(1), TheoremId::CorMatrix, &params).is_verified());
    }

    #[test]
    fn ex_m2z2_holds() {
        assert!(check_claim(
            &m2z2_reference(),
            TheoremId::ExM2z2,
            &ClaimParams::default()
        )
        .is_verified());
    }

    #[test]
    fn theorem_names_parse() {
        for &t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>(), Ok(t));
        }
    }
}
