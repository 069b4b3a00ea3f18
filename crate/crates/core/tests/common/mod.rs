//! Reference implementations that work straight from the tables, with no
//! caching and no pruning. Slow by design.

#![allow(dead_code)]

use starclean_core::{
    default_corpus, BuildConfig, CorpusEntry, DecompositionMode, ElementId, FactorizationMode,
    StarRing,
};

pub fn is_unit(s: &StarRing, u: ElementId) -> bool {
    let r = s.ring();
    r.elements()
        .any(|v| r.mul(u, v) == r.one() && r.mul(v, u) == r.one())
}

pub fn is_idempotent(s: &StarRing, e: ElementId) -> bool {
    s.ring().mul(e, e) == e
}

pub fn is_projection(s: &StarRing, e: ElementId) -> bool {
    is_idempotent(s, e) && s.star(e) == e
}

pub fn units(s: &StarRing) -> Vec<ElementId> {
    s.ring().elements().filter(|&u| is_unit(s, u)).collect()
}

pub fn idempotents(s: &StarRing) -> Vec<ElementId> {
    s.ring()
        .elements()
        .filter(|&e| is_idempotent(s, e))
        .collect()
}

pub fn projections(s: &StarRing) -> Vec<ElementId> {
    s.ring()
        .elements()
        .filter(|&e| is_projection(s, e))
        .collect()
}

fn all_pairs(s: &StarRing) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    let r = s.ring();
    r.elements()
        .flat_map(move |e| r.elements().map(move |u| (e, u)))
}

/// Every pair `(e, u)` in `R x R` is tried; the first in lexicographic order
/// that satisfies the mode is returned.
pub fn decomposition(
    s: &StarRing,
    a: ElementId,
    mode: DecompositionMode,
) -> Option<(ElementId, ElementId)> {
    let r = s.ring();
    let star = matches!(
        mode,
        DecompositionMode::StarClean | DecompositionMode::StronglyStarClean
    );
    let strong = matches!(
        mode,
        DecompositionMode::StronglyClean | DecompositionMode::StronglyStarClean
    );
    all_pairs(s).find(|&(e, u)| {
        r.add(e, u) == a
            && if star {
                is_projection(s, e)
            } else {
                is_idempotent(s, e)
            }
            && is_unit(s, u)
            && (!strong || r.mul(e, u) == r.mul(u, e))
    })
}

/// All pairs are tried; among those satisfying the mode the smallest first
/// factor wins, with ties broken by the identity and then the smallest unit.
pub fn factorization(
    s: &StarRing,
    a: ElementId,
    mode: FactorizationMode,
) -> Option<(ElementId, ElementId)> {
    let r = s.ring();
    all_pairs(s)
        .filter(|&(e, u)| {
            let left = r.mul(e, u) == a;
            let right = r.mul(u, e) == a;
            is_unit(s, u)
                && match mode {
                    FactorizationMode::Pu => is_projection(s, e) && left,
                    FactorizationMode::Up => is_projection(s, e) && right,
                    FactorizationMode::PuTwoSided => is_projection(s, e) && left && right,
                    FactorizationMode::EuTwoSided => is_idempotent(s, e) && left && right,
                }
        })
        .min_by_key(|&(e, u)| (e, u != r.one(), u))
}

pub fn corpus() -> Vec<CorpusEntry> {
    default_corpus(&BuildConfig::default())
}

pub fn built(corpus: &[CorpusEntry]) -> Vec<(&str, &StarRing)> {
    corpus
        .iter()
        .map(|e| {
            let ring = e
                .ring
                .as_ref()
                .unwrap_or_else(|err| panic!("{}: {err}", e.label));
            (e.label.as_str(), ring)
        })
        .collect()
}
