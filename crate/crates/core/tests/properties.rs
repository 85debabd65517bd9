use std::sync::Arc;

use proptest::prelude::*;

use matroid_depth::decomposition::{csd, csd_search, is_valid, SearchOptions};
use matroid_depth::depth::{contraction_depth, csd_gf2_quotient, deletion_depth};
use matroid_depth::matroid::{dual, gf2_rank, minor, Gf2, Matroid, MatroidRef};
use matroid_depth::tamed::TamedExtension;
use matroid_depth::ElementSet;

fn gf2() -> impl Strategy<Value = Gf2> {
    (1usize..=4)
        .prop_flat_map(|rows| (Just(rows), prop::collection::vec(0u64..1 << rows, 1..=6)))
        .prop_map(|(rows, cols)| Gf2::new(rows, cols).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_rank_formula(m in gf2(), bits in any::<u64>()) {
        let r: MatroidRef = Arc::new(m);
        let x = ElementSet::from_bits(bits) & r.ground();
        let expected = r.rank_unchecked(r.ground() - x) + x.len() - r.full_rank();
        prop_assert_eq!(dual(&r).rank_unchecked(x), expected);
    }

    #[test]
    fn contraction_matches_column_projection(m in gf2(), c in any::<u64>(), x in any::<u64>()) {
        let cols = m.columns().to_vec();
        let r: MatroidRef = Arc::new(m);
        let c = ElementSet::from_bits(c) & r.ground();
        let view = minor(&r, c, ElementSet::empty()).unwrap();
        let x = ElementSet::from_bits(x) & view.ground();
        let lifted = view.lift(x);
        let pick = |s: ElementSet| s.iter().map(|i| cols[i]).collect::<Vec<_>>();
        let direct = gf2_rank(pick(lifted | c)) - gf2_rank(pick(c));
        prop_assert_eq!(view.rank_unchecked(x), direct);
    }

    #[test]
    fn depth_relations(m in gf2()) {
        let r: MatroidRef = Arc::new(m.clone());
        let cd = contraction_depth(&m, 16).unwrap();
        prop_assert_eq!(cd, deletion_depth(&dual(&r), 16).unwrap());
        let s = csd(&m, &SearchOptions::default()).unwrap();
        prop_assert_eq!(s, csd_gf2_quotient(&m, 6).unwrap());
        prop_assert!(s <= cd);
    }

    #[test]
    fn optimal_extension_restricts_to_the_matroid(m in gf2()) {
        let report = csd_search(&m, &SearchOptions::default()).unwrap().unwrap();
        prop_assert!(is_valid(&m, &report.decomposition).unwrap());
        let r: MatroidRef = Arc::new(m);
        let ext = TamedExtension::new(r.clone(), report.decomposition).unwrap();
        prop_assert_eq!(ext.full_rank(), r.full_rank());
        for x in r.ground().subsets() {
            prop_assert_eq!(ext.rank_unchecked(x), r.rank_unchecked(x));
        }
    }
}
