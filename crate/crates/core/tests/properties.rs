mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hom_closed_form_matches_brute_force(input in algebra_with_objects()) {
        check_hom_closed_form(input)?;
    }

    #[test]
    fn barcode_round_trip(input in barcode_input()) {
        check_barcode_round_trip(input)?;
    }

    #[test]
    fn conflation_witnesses_recheck(input in conflation_input()) {
        check_conflation_recheck(input)?;
    }

    #[test]
    fn quotient_composition_is_well_defined(input in quotient_input()) {
        check_quotient_composition(input)?;
    }

    #[test]
    fn dimension_identities_on_coheart_pairs(input in pair_input()) {
        check_dimension_identities(input)?;
    }

    #[test]
    fn h_is_independent_of_witnesses(input in h_input()) {
        check_h_independence(input)?;
    }

    #[test]
    fn cokernels_are_h_of_cones(input in cone_input()) {
        check_cone_cokernel(input)?;
    }
}
