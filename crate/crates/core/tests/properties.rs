//! Randomized invariants, each over at least 256 instances.

mod common;

use common::*;
use horn_amoeba::geometry::newton_polytope;
use horn_amoeba::horn::catalog;
use horn_amoeba::supports::{horn_fan, k_i};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 256,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn resultant_is_multiplicative(seed in any::<u64>(), nvars in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_in_first_var(&mut r, nvars);
        let g = random_in_first_var(&mut r, nvars);
        let h = random_in_first_var(&mut r, nvars);
        prop_assert_eq!(resultant_multiplicative(&f, &g, &h), Ok(()));
    }

    #[test]
    fn dual_cone_is_involutive(seed in any::<u64>()) {
        let c = random_cone(&mut rng(seed));
        prop_assert_eq!(dual_is_involutive(&c), Ok(()));
    }

    #[test]
    fn normal_fans_cover_space(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_polytope(&mut r);
        let probes: Vec<Vec<i64>> = (0..8).map(|_| (0..p.nvars()).map(|_| r.gen_range(-5..=5)).collect()).collect();
        prop_assert_eq!(normal_fan_covers(&p, &probes), Ok(()));
    }

    #[test]
    fn horn_systems_are_compatible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = loop {
            if let Some(p) = random_coefficient(&mut r, 3) {
                break p;
            }
        };
        prop_assert_eq!(horn_system_is_compatible(&phi), Ok(()));
    }

    #[test]
    fn supports_pass_brute_force_recheck(seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = loop {
            if let Some(p) = random_coefficient(&mut r, 2) {
                break p;
            }
        };
        prop_assert!(supports_recheck(&phi, 8).is_ok(), "{:?}", supports_recheck(&phi, 8));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn census_orders_lie_in_newton_polytope(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_sparse_poly(&mut r);
        let probes: Vec<Vec<f64>> = (0..6).map(|_| vec![r.gen_range(-6.0..6.0), r.gen_range(-6.0..6.0)]).collect();
        prop_assert_eq!(orders_in_newton_polytope(&f, 12, &probes, seed), Ok(()));
    }

    #[test]
    fn abel_cones_recede_with_components(seed in any::<u64>(), which in 0usize..7) {
        let cases = abel_cases();
        let case = &cases[which % cases.len()];
        prop_assert_eq!(abel_cone_matches_component(case, &mut rng(seed), seed), Ok(()));
    }
}

fn abel_cases() -> Vec<AbelCase> {
    use horn_amoeba::algebra::parse_default;
    use horn_amoeba::supports::SupportSpec;
    let phi = catalog::pentagon_coefficient();
    let r = parse_default("(1-x1)*(1-x2)*(1-x1-x2)", 2).unwrap();
    let np = newton_polytope(&r).unwrap();
    let fan = horn_fan(&phi).unwrap();
    let mut out: Vec<AbelCase> = fan
        .index_map
        .iter()
        .zip(&fan.b_cones)
        .map(|(ids, b)| {
            let order = np.vertices().iter().find(|v| np.normal_cone(v).same_as(b)).expect("vertex cone").clone();
            AbelCase { name: "pentagon", f: r.clone(), support: k_i(&phi, &ids[0]).unwrap(), order }
        })
        .collect();
    out.push(AbelCase {
        name: "bergman (3,2)",
        f: parse_default("1 - 2*x1 - 3*x2 + x1^2 - 6*x1*x2 + 3*x2^2 - x2^3", 2).unwrap(),
        support: SupportSpec::orthant(2),
        order: vec![0, 0],
    });
    out.push(AbelCase {
        name: "non-bergman n=3 p=2",
        f: parse_default("(1-x1)^2 - x2 - x3", 3).unwrap(),
        support: SupportSpec::orthant(3),
        order: vec![0, 0, 0],
    });
    out
}
