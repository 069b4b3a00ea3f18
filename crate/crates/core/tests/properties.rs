mod common;

use proptest::prelude::*;
use starclean_core::{
    check_claim, is_predicate, make_corner_ring, make_product, make_table_ring, make_zmod,
    matrix_unit, parse_spec_document, principal_ideal, validate_involution, validate_ring,
    BuildConfig, ClaimParams, ElementId, PredicateName, Side, StarRing, StarSpec, TheoremId,
};

fn zid(n: usize) -> StarRing {
    StarRing::with_identity(make_zmod(n).unwrap()).unwrap()
}

#[test]
fn corpus_rings_revalidate() {
    for e in common::corpus() {
        let s = e.ring.unwrap();
        if s.order() <= 64 {
            validate_ring(s.ring()).unwrap_or_else(|err| panic!("{}: {err}", e.label));
        }
        validate_involution(s.ring(), s.star_table()).unwrap();
        for x in s.ring().elements() {
            assert_eq!(s.star(s.star(x)), x);
        }
    }
}

#[test]
fn structure_sets_match_oracle() {
    for e in common::corpus() {
        let s = e.ring.unwrap();
        if s.order() > 81 {
            continue;
        }
        let sets = s.sets();
        assert_eq!(sets.idempotents, common::idempotents(&s), "{}", e.label);
        assert_eq!(sets.units, common::units(&s), "{}", e.label);
        let fixed: Vec<ElementId> = common::idempotents(&s)
            .into_iter()
            .filter(|&x| s.star(x) == x)
            .collect();
        assert_eq!(sets.projections, fixed, "{}", e.label);
    }
}

#[test]
fn conjugate_transpose_is_an_involution_on_small_bases() {
    let cfg = BuildConfig::default();
    for e in common::corpus()
        .into_iter()
        .filter(|e| e.provenance == "base")
    {
        let s = e.ring.unwrap();
        if s.order() > 4 {
            continue;
        }
        let m = StarRing::matrix(&s, 2, &cfg).unwrap();
        validate_involution(m.ring(), m.star_table()).unwrap();
    }
}

#[test]
fn e11_plus_e12_is_an_unprojected_idempotent() {
    let cfg = BuildConfig::default();
    for base in [zid(2), zid(3), zid(4)] {
        let m = StarRing::matrix(&base, 2, &cfg).unwrap();
        let r = m.ring();
        let e = r.add(
            matrix_unit(base.ring(), 2, 1, 1),
            matrix_unit(base.ring(), 2, 1, 2),
        );
        assert_eq!(r.mul(e, e), e);
        assert_ne!(m.star(e), e);
    }
}

#[test]
fn corners_embed_as_subrings() {
    let m = StarRing::matrix(&zid(3), 2, &BuildConfig::default()).unwrap();
    let r = m.ring();
    for &p in &m.sets().projections {
        let c = make_corner_ring(&m, p).unwrap();
        assert_eq!(c.lift(c.ring.ring().one()), p);
        for x in c.ring.ring().elements() {
            for y in c.ring.ring().elements() {
                let (a, b) = (c.lift(x), c.lift(y));
                assert_eq!(c.lift(c.ring.ring().mul(x, y)), r.mul(a, b));
                assert_eq!(c.lift(c.ring.ring().add(x, y)), r.add(a, b));
            }
            assert_eq!(c.lift(c.ring.star(x)), m.star(c.lift(x)));
            assert_eq!(c.restrict(c.lift(x)), Some(x));
        }
    }
}

#[test]
fn unit_regular_rings_are_clean() {
    for e in common::corpus() {
        let s = e.ring.unwrap();
        if is_predicate(&s, PredicateName::UnitRegular).holds {
            assert!(is_predicate(&s, PredicateName::Clean).holds, "{}", e.label);
        }
    }
}

fn small_star_ring() -> impl Strategy<Value = StarRing> {
    prop_oneof![
        (1usize..=12).prop_map(zid),
        (2usize..=4, 2usize..=4).prop_map(|(a, b)| {
            let cfg = BuildConfig::default();
            StarRing::componentwise_product(&zid(a), &zid(b), &cfg).unwrap()
        }),
        (2usize..=4).prop_map(|n| StarRing::swap_product(
            &make_zmod(n).unwrap(),
            &BuildConfig::default()
        )
        .unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn commutative_ideals_agree_on_both_sides(s in small_star_ring(), a in 0u32..16) {
        let a = ElementId(a % s.order() as u32);
        prop_assert_eq!(
            principal_ideal(s.ring(), a, Side::Left),
            principal_ideal(s.ring(), a, Side::Right)
        );
    }

    #[test]
    fn no_claim_is_violated(s in small_star_ring()) {
        let params = ClaimParams::default();
        for &id in TheoremId::ALL {
            let v = check_claim(&s, id, &params);
            prop_assert!(!v.is_violated(), "{} on {}: {:?}", id, s.label(), v);
        }
    }

    #[test]
    fn tables_round_trip_through_table_rings(n in 1usize..=6, m in 1usize..=4) {
        let r = make_product(&make_zmod(n).unwrap(), &make_zmod(m).unwrap(), &BuildConfig::default()).unwrap();
        let add: Vec<u32> = r.add_table().iter().map(|x| x.0).collect();
        let mul: Vec<u32> = r.mul_table().iter().map(|x| x.0).collect();
        let t = make_table_ring(r.order(), &add, &mul).unwrap();
        prop_assert!(t.same_tables(&r));
    }

    #[test]
    fn spec_documents_round_trip(n in 1usize..=6, k in 0usize..3) {
        let base = StarSpec::zmod(n);
        let spec = match k {
            0 => base,
            1 => StarSpec::matrix(base, 2),
            _ => StarSpec::product(base.clone(), base, starclean_core::InvolutionSpec::Swap),
        };
        let doc = starclean_core::RingSpecDocument::new(spec);
        let text = doc.to_canonical();
        let parsed = parse_spec_document(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.to_canonical(), text);
    }
}
