use efc_core::pi1lab::{
    check_axioms, compare_functors, divisors, torsion_points, windings_over, CoverMap, TorusFunctorModel, TorusPath,
    Winding,
};
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn units(n: u64) -> Vec<u64> {
    (1..n.max(2)).filter(|u| u.gcd(&n) == 1).collect()
}

fn level_and_unit() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=30).prop_flat_map(|n| (Just(n), prop::sample::select(units(n))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: RngSeed::Fixed(0x9e1), ..ProptestConfig::default() })]

    #[test]
    fn generator_lifts_are_unique((level, u) in level_and_unit()) {
        let m = TorusFunctorModel::new(level, u).unwrap();
        for n in divisors(level) {
            for s in 0..level {
                let base = s * n % level;
                let path = TorusPath::generator(vec![base], 0);
                let lift = m.lift_path(&CoverMap::Power(n), &path, &[s]).unwrap();
                prop_assert_eq!(windings_over(level, n, Winding::from_integer(1), 3), lift.winding.clone());
                let top = m.endpoint(&lift).unwrap();
                prop_assert_eq!(CoverMap::Power(n).apply(level, &top), m.endpoint(&path).unwrap());
            }
        }
    }

    #[test]
    fn xi_is_compatible_along_divisor_chains((level, u) in level_and_unit()) {
        let m = TorusFunctorModel::new(level, u).unwrap();
        let xi = m.xi_sequence();
        for &(n, xn) in &xi {
            // Independent formula: the endpoint of winding 1/n is u·N/n.
            prop_assert_eq!(xn, u * (level / n) % level);
            for &(mn, xmn) in xi.iter().filter(|(d, _)| d % n == 0) {
                prop_assert_eq!(xmn * (mn / n) % level, xn);
            }
        }
    }

    #[test]
    fn twists_compose((level, u1) in level_and_unit(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let us = units(level);
        let (u2, u3) = (us[i.index(us.len())], us[j.index(us.len())]);
        let model = |u| TorusFunctorModel::new(level, u).unwrap();
        let t12 = compare_functors(&model(u1), &model(u2)).unwrap();
        let t23 = compare_functors(&model(u2), &model(u3)).unwrap();
        let t13 = compare_functors(&model(u1), &model(u3)).unwrap();
        prop_assert_eq!(t13, t12 * t23 % level);
    }
}

#[test]
fn matrix_covers_lift_to_the_fiber() {
    let m = TorusFunctorModel::new(12, 5).unwrap();
    let cover = CoverMap::Matrix(vec![vec![2, 1], vec![0, 3]]);
    for s in torsion_points(12, 2) {
        let base = cover.apply(12, &s);
        for i in 0..2 {
            let path = TorusPath::generator(base.clone(), i);
            let lift = m.lift_path(&cover, &path, &s).unwrap();
            let top = m.endpoint(&lift).unwrap();
            assert_eq!(cover.apply(12, &top), m.endpoint(&path).unwrap());
        }
    }
}

#[test]
fn axioms_hold_at_small_levels() {
    for level in [1u64, 4, 6, 8] {
        for u in units(level) {
            let report = check_axioms(&TorusFunctorModel::new(level, u).unwrap(), 2);
            assert!(report.passed(), "level {level}, u {u}");
        }
    }
}
