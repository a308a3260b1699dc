mod common;

use common::*;
use proptest::prelude::*;

use fermion::asymptotics::{expected_alpha_sum, expected_beta_sum};
use fermion::kernels::{admissible, tail_constants};
use fermion::sampler::{sample_dpp, PointConfiguration};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernels_are_symmetric(spec in kernel_spec(), u in 0.0f64..1.0, v in 0.0f64..1.0) {
        kernel_symmetry(&spec, u, v)?;
    }

    #[test]
    fn restricted_spectrum_in_unit_interval(spec in kernel_spec(), u in 0.0f64..0.8, len in 0.05f64..2.0) {
        spectrum_in_unit_interval(&spec, u, len)?;
    }

    #[test]
    fn correlations_are_nonnegative(spec in kernel_spec(), us in prop::collection::vec(0.0f64..1.0, 1..5)) {
        correlations_nonnegative(&spec, &us)?;
    }

    #[test]
    fn two_point_function_vanishes_on_diagonal(spec in kernel_spec(), u in 0.0f64..1.0) {
        rho2_vanishes_on_diagonal(&spec, u)?;
    }

    #[test]
    fn gap_decreases_with_region(spec in kernel_spec(), u in 0.0f64..0.8, inner in 0.05f64..1.0, extra in 0.0f64..1.0) {
        gap_monotone(&spec, u, inner, extra)?;
    }

    #[test]
    fn stationary_objects_ignore_sign_of_a(c in stationary(), zeta in -20.0f64..20.0, y in -10.0f64..10.0) {
        sign_of_a_invariance(&c, zeta, y)?;
    }

    #[test]
    fn tail_constants_under_shift_and_negation(p in any_params()) {
        tail_constant_symmetries(&p)?;
    }

    #[test]
    fn tail_constants_are_admissible(p in any_params()) {
        let c = tail_constants(&p);
        let v = admissible(&c);
        prop_assert!(v.ok, "{:?} from {:?}: {}", c, p, v.reason);
    }

    #[test]
    fn expectations_sum_to_one(p in any_params()) {
        let s = expected_alpha_sum(&p).unwrap() + expected_beta_sum(&p).unwrap();
        prop_assert!((s - 1.0).abs() < 1e-10, "{:?}: {}", p, s);
    }

    #[test]
    fn configurations_round_trip_through_json(points in prop::collection::vec(0.0f64..1.0, 0..20)) {
        let c = PointConfiguration::new(points, vec![(0.0, 1.0)], None).unwrap();
        let back: PointConfiguration = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn samples_stay_in_region_and_are_sorted(seed in any::<u64>(), a in -2.0f64..2.0, len in 0.1f64..3.0) {
        use fermion::kernels::KernelSpec;
        use fermion::operators::{nystrom, Region};
        let op = nystrom(&KernelSpec::Sine, &Region::interval(a, a + len).unwrap(), 24).unwrap();
        let c = sample_dpp(&op, seed, 0).unwrap();
        prop_assert!(c.points.iter().all(|&x| a <= x && x <= a + len));
        prop_assert!(c.points.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(c, sample_dpp(&op, seed, 0).unwrap());
    }
}
