mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn crt_reconstructs_reduced_polynomials(seed in any::<u64>()) {
        prop_assert_eq!(crt_round_trip(seed), Ok(()));
    }

    #[test]
    fn riemann_roch_dimension_law(seed in any::<u64>()) {
        for c in curves() {
            prop_assert_eq!(riemann_roch_law(&c, seed), Ok(()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn tower_rank_is_multiplicative(seed in any::<u64>()) {
        prop_assert_eq!(composition_multiplicative(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn mutated_algorithms_fail_verification(seed in any::<u64>()) {
        prop_assert_eq!(mutant_detected(seed), Ok(()));
    }

    #[test]
    fn products_stay_in_the_sum_space(seed in any::<u64>()) {
        for c in curves() {
            prop_assert_eq!(product_closure(&c, seed), Ok(()));
        }
    }
}
