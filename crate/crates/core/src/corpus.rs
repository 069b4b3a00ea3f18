//! Fixed and randomly sampled collections of *-rings.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::construct::BuildConfig;
use crate::error::RingError;
use crate::spec::{InvolutionSpec, RingSpec, StarSpec};
use crate::star::{make_corner_ring, StarRing};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub spec: StarSpec,
    /// Which family the entry came from: `base`, `matrix`, `corner` or `sample`.
    pub provenance: &'static str,
    pub ring: Result<StarRing, RingError>,
}

impl CorpusEntry {
    pub fn build(spec: StarSpec, provenance: &'static str, cfg: &BuildConfig) -> Self {
        let ring = spec.build(cfg);
        let label = match &ring {
            Ok(s) => s.label(),
            Err(_) => spec.to_json().to_string(),
        };
        CorpusEntry {
            label,
            spec,
            provenance,
            ring,
        }
    }
}

fn frobenius(q: usize) -> StarSpec {
    StarSpec::new(RingSpec::Gf { q }, InvolutionSpec::Frobenius)
}

fn square(base: StarSpec, involution: InvolutionSpec) -> StarSpec {
    StarSpec::product(base.clone(), base, involution)
}

fn base_specs() -> Vec<StarSpec> {
    let mut out: Vec<StarSpec> = (1..=8).map(StarSpec::zmod).collect();
    out.extend([2, 3, 4, 5, 7, 9].map(StarSpec::gf));
    out.extend([4, 9].map(frobenius));
    for n in [2, 3] {
        for inv in [
            InvolutionSpec::Identity,
            InvolutionSpec::Swap,
            InvolutionSpec::Componentwise,
        ] {
            out.push(square(StarSpec::zmod(n), inv));
        }
    }
    out.push(StarSpec::product(
        frobenius(4),
        StarSpec::zmod(2),
        InvolutionSpec::Componentwise,
    ));
    out
}

fn matrix_bases() -> Vec<StarSpec> {
    let mut out: Vec<StarSpec> = (1..=4).map(StarSpec::zmod).collect();
    out.push(StarSpec::gf(4));
    out.push(frobenius(4));
    for inv in [
        InvolutionSpec::Identity,
        InvolutionSpec::Swap,
        InvolutionSpec::Componentwise,
    ] {
        out.push(square(StarSpec::zmod(2), inv));
    }
    out
}

/// Residue rings, small fields, products, `M2` over bases of order at most 4,
/// and the corners of all of these at every projection other than 0 and 1.
pub fn default_corpus(cfg: &BuildConfig) -> Vec<CorpusEntry> {
    let mut specs: Vec<(StarSpec, &'static str)> =
        base_specs().into_iter().map(|s| (s, "base")).collect();
    specs.extend(
        matrix_bases()
            .into_iter()
            .map(|b| (StarSpec::matrix(b, 2), "matrix")),
    );
    with_corners(specs, cfg)
}

fn with_corners(specs: Vec<(StarSpec, &'static str)>, cfg: &BuildConfig) -> Vec<CorpusEntry> {
    let entries: Vec<CorpusEntry> = specs
        .into_par_iter()
        .map(|(spec, provenance)| CorpusEntry::build(spec, provenance, cfg))
        .collect();
    let corners: Vec<CorpusEntry> = entries.par_iter().flat_map_iter(corners_of).collect();
    entries.into_iter().chain(corners).collect()
}

fn corners_of(entry: &CorpusEntry) -> Vec<CorpusEntry> {
    let Ok(s) = &entry.ring else {
        return Vec::new();
    };
    let r = s.ring();
    s.sets()
        .projections
        .iter()
        .filter(|&&p| p != r.zero() && p != r.one())
        .map(|&p| {
            let spec = StarSpec::corner(entry.spec.clone(), p);
            let ring = make_corner_ring(s, p).map(|c| c.ring);
            let label = match &ring {
                Ok(c) => c.label(),
                Err(_) => spec.to_json().to_string(),
            };
            CorpusEntry {
                label,
                spec,
                provenance: "corner",
                ring,
            }
        })
        .collect()
}

fn random_spec(rng: &mut ChaCha8Rng, depth: usize) -> StarSpec {
    let choice = if depth == 0 {
        rng.random_range(0..2)
    } else {
        rng.random_range(0..5)
    };
    match choice {
        0 => StarSpec::zmod(rng.random_range(1..=9)),
        1 => {
            let q = [2, 3, 4, 5, 7, 9][rng.random_range(0..6)];
            if (q == 4 || q == 9) && rng.random_bool(0.5) {
                frobenius(q)
            } else {
                StarSpec::gf(q)
            }
        }
        2 => {
            let base = random_spec(rng, depth - 1);
            if rng.random_bool(0.5) {
                square(base, InvolutionSpec::Swap)
            } else {
                StarSpec::product(
                    base,
                    random_spec(rng, depth - 1),
                    InvolutionSpec::Componentwise,
                )
            }
        }
        3 => StarSpec::matrix(random_spec(rng, 0), 2),
        _ => {
            let base = random_spec(rng, depth - 1);
            let p = rng.random_range(0..16);
            StarSpec::corner(base, crate::ring::ElementId(p))
        }
    }
}

/// `count` distinct random composite *-rings that build within `cfg`.
/// The same seed always yields the same corpus.
pub fn sample_corpus(count: usize, seed: u64, cfg: &BuildConfig) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < count.saturating_mul(50).max(50) {
        attempts += 1;
        let spec = random_spec(&mut rng, 2);
        let entry = CorpusEntry::build(spec, "sample", cfg);
        if entry.ring.is_ok() && seen.insert(entry.label.clone()) {
            out.push(entry);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_builds_with_unique_labels() {
        let corpus = default_corpus(&BuildConfig::default());
        let labels: BTreeSet<&str> = corpus.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels.len(), corpus.len());
        for e in &corpus {
            assert!(e.ring.is_ok(), "{} failed: {:?}", e.label, e.ring);
        }
        assert!(labels.contains("Z2 x Z2 / swap"));
        assert!(labels.contains("M2(Z2) / transpose"));
        assert!(corpus.iter().any(|e| e.provenance == "corner"));
    }

    #[test]
    fn corner_specs_rebuild_to_the_same_ring() {
        let cfg = BuildConfig::default();
        let corpus = default_corpus(&cfg);
        for e in corpus.iter().filter(|e| e.provenance == "corner").take(5) {
            assert_eq!(&e.spec.build(&cfg).unwrap(), e.ring.as_ref().unwrap());
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let cfg = BuildConfig::with_max_order(256);
        let a: Vec<String> = sample_corpus(8, 7, &cfg)
            .into_iter()
            .map(|e| e.label)
            .collect();
        let b: Vec<String> = sample_corpus(8, 7, &cfg)
            .into_iter()
            .map(|e| e.label)
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
    }
}
