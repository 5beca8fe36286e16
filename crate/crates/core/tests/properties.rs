use filtrum::factorial::{minimal_elements, minimal_elements_pairwise};
use filtrum::{all_filters, generate, is_filter, ElementSet, FiniteMonoid, Limits, QuadInt};
use proptest::prelude::*;

proptest! {
    #[test]
    fn norm_is_multiplicative(a in -100i64..=100, b in -100i64..=100, c in -100i64..=100, d in -100i64..=100) {
        let x = QuadInt::new(a, b);
        let y = QuadInt::new(c, d);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn minimal_elements_match_pairwise(
        set in (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..=10, n), 1..12))
    ) {
        prop_assert_eq!(minimal_elements(&set).unwrap(), minimal_elements_pairwise(&set).unwrap());
    }

    #[test]
    fn generated_filter_is_least(n in 1usize..=12, mask in 0u64..4096) {
        let m = FiniteMonoid::integers_mod(n).unwrap();
        let s = ElementSet::from_mask(mask & ((1 << n) - 1));
        let g = generate(&m, &s);
        prop_assert!(is_filter(&m, g.members()));
        prop_assert!(s.is_subset(g.members()));
        for f in all_filters(&m, &Limits::default()).unwrap().iter() {
            if s.is_subset(f.members()) {
                prop_assert!(g.is_subset(f));
            }
        }
    }
}
