use dimlift::fields::{caloric_polynomial, heat_kernel_translate, CaloricKind};
use dimlift::integrate::{integrate_weighted, rules, AngularRule, QuadratureSpec, Weight};
use dimlift::weights::{finite_weight, finite_weight_supported, gaussian_weight, ratio_bound};
use dimlift::{chain_rule_check, lift_point_time, DomainSpec, LiftConfig};
use proptest::prelude::*;

fn lift_cfg() -> impl Strategy<Value = LiftConfig> {
    (1usize..=3, 1usize..=4).prop_map(|(d, n)| LiftConfig::new(d, n).unwrap())
}

fn point_for(cfg: LiftConfig) -> impl Strategy<Value = (LiftConfig, Vec<f64>)> {
    proptest::collection::vec(-2.0f64..2.0, cfg.big_n()).prop_map(move |y| (cfg, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // |f(y)|² ≤ n|y|² = 2nd·t, so lifted points never leave the cone.
    #[test]
    fn lifted_points_stay_in_the_cone((cfg, y) in lift_cfg().prop_flat_map(point_for)) {
        let p = lift_point_time(cfg, &y).unwrap();
        let slack = 1e-12 * (1.0 + p.t);
        prop_assert!(p.x.iter().map(|a| a * a).sum::<f64>() <= 2.0 * (cfg.big_n() as f64) * p.t + slack);
        let cone = DomainSpec::Cone { tau: p.t.max(1e-300) };
        prop_assert!(cone.contains_spacetime(cfg, &p.x, p.t));
    }

    #[test]
    fn chain_rule_matches_differences(
        (cfg, y) in (1usize..=2, 1usize..=6)
            .prop_filter("nd <= 12", |(d, n)| d * n <= 12)
            .prop_map(|(d, n)| LiftConfig::new(d, n).unwrap())
            .prop_flat_map(|cfg| proptest::collection::vec(-0.6f64..0.6, cfg.big_n()).prop_map(move |y| (cfg, y))),
        kind in prop_oneof![Just(CaloricKind::X1), Just(CaloricKind::X1Sq), Just(CaloricKind::X1Cube), Just(CaloricKind::Radial)],
    ) {
        prop_assume!(y.iter().map(|a| a * a).sum::<f64>() > 1e-2);
        let c = chain_rule_check(cfg, &caloric_polynomial(kind), &[y.clone()]).unwrap();
        prop_assert!(c.max_first_order < 1e-6, "{c:?}");
        prop_assert!(c.max_laplacian < 1e-4, "{c:?}");
        let hk = heat_kernel_translate(vec![0.3; cfg.d], 8.0).unwrap();
        let c = chain_rule_check(cfg, &hk, &[y]).unwrap();
        prop_assert!(c.max_first_order < 1e-6 && c.max_laplacian < 1e-4, "{c:?}");
    }

    #[test]
    fn finite_weight_is_dominated(d in 1usize..=3, n in 2usize..=40, t in 0.1f64..5.0, s in 0.0f64..1.0) {
        prop_assume!(n * d >= d + 3);
        let r = s * (2.0 * (n * d) as f64 * t).sqrt();
        let mut x = vec![0.0; d];
        x[0] = r;
        let c = ratio_bound(d, n).unwrap();
        prop_assert!(finite_weight(d, n, t, &x).unwrap() <= c * gaussian_weight(d, t, &x).unwrap() * (1.0 + 1e-12));
        prop_assert!(c >= 1.0);
    }

    #[test]
    fn weights_are_probability_densities(d in 1usize..=3, n in 1usize..=30, t in 0.1f64..5.0) {
        let spec = QuadratureSpec::default();
        let g = integrate_weighted(|_| Ok(1.0), Weight::Gaussian, d, t, &spec).unwrap().value;
        prop_assert!((g - 1.0).abs() < 1e-12);
        let f = integrate_weighted(|_| Ok(1.0), Weight::Finite { n }, d, t, &spec).unwrap().value;
        prop_assert!((f - 1.0).abs() < 1e-12);
        // second moment 2dt under both
        let m2 = integrate_weighted(|x| Ok(x.iter().map(|a| a * a).sum()), Weight::Finite { n }, d, t, &spec).unwrap().value;
        prop_assert!((m2 - 2.0 * d as f64 * t).abs() < 1e-10 * (1.0 + t));
        prop_assert_eq!(finite_weight_supported(d, n), n * d >= d + 2);
    }

    #[test]
    fn sphere_rules_are_normalised(dim in 1usize..=6, m in 1usize..=12) {
        for rule in [AngularRule::ProductGauss, AngularRule::TensorTrapezoid] {
            if rule == AngularRule::TensorTrapezoid && dim > 3 {
                continue;
            }
            let s = rules::sphere_rule(dim, rule, m).unwrap();
            prop_assert!((s.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            for (p, _) in s.iter() {
                prop_assert!((p.iter().map(|a| a * a).sum::<f64>() - 1.0).abs() < 1e-13);
            }
        }
    }
}
