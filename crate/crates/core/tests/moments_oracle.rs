mod common;

use common::{close, rational_moments};
use maxdiv::moments::{
    chebyshev_tail, exact_moments, expected_regions, second_moment_2d, variance_asymptotic,
    variance_closed_form, variance_exact, CutModel,
};
use proptest::prelude::*;

const REL: f64 = 1e-10;
const ABS: f64 = 1e-12;

#[test]
fn closed_forms_match_rational_enumeration() {
    for n in 1..=30u64 {
        for k in 0..=10i64 {
            let p = k as f64 / 10.0;
            for d in [2u32, 3] {
                let model = CutModel::new(n, p, d).unwrap();
                let oracle = rational_moments(n, k, 10, d);
                let ctx = format!("n={n} p={p} d={d}");
                assert!(close(expected_regions(&model), oracle.mean, REL, ABS), "mean {ctx}");
                assert!(
                    close(variance_closed_form(&model).unwrap(), oracle.variance, REL, ABS),
                    "variance {ctx}: {} vs {}",
                    variance_closed_form(&model).unwrap(),
                    oracle.variance
                );
                assert!(close(variance_exact(&model).unwrap(), oracle.variance, REL, ABS), "enum {ctx}");
                if d == 2 {
                    assert!(
                        close(second_moment_2d(&model).unwrap(), oracle.second_moment, REL, ABS),
                        "second moment {ctx}"
                    );
                }
            }
        }
    }
}

#[test]
fn general_dimension_enumeration() {
    for d in [1u32, 4, 6] {
        for (n, k) in [(7u64, 3i64), (15, 5), (25, 9)] {
            let model = CutModel::new(n, k as f64 / 10.0, d).unwrap();
            let oracle = rational_moments(n, k, 10, d);
            let got = exact_moments(&model, 100).unwrap();
            assert!(close(got.mean, oracle.mean, REL, ABS));
            assert!(close(expected_regions(&model), oracle.mean, REL, ABS));
            assert!(close(got.variance, oracle.variance, REL, ABS));
        }
    }
}

#[test]
fn asymptotic_ratio_approaches_one() {
    let ratios: Vec<f64> = [100u64, 300, 1000, 3000]
        .iter()
        .map(|&n| {
            let model = CutModel::planar(n, 0.5).unwrap();
            exact_moments(&model, 10_000).unwrap().variance / variance_asymptotic(&model).unwrap()
        })
        .collect();
    assert!(ratios.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()));
    assert!((ratios[2] - 1.0).abs() < 0.01);

    let space = CutModel::new(1000, 0.5, 3).unwrap();
    let ratio = variance_exact(&space).unwrap() / variance_asymptotic(&space).unwrap();
    assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
}

#[test]
fn extreme_probabilities_are_deterministic() {
    for n in 1..=40u64 {
        for d in 1..=5u32 {
            for p in [0.0, 1.0] {
                let model = CutModel::new(n, p, d).unwrap();
                let x = if p == 0.0 { 0 } else { n };
                let count = maxdiv::moments::region_count(x, d).unwrap() as f64;
                assert_eq!(variance_exact(&model).unwrap(), 0.0);
                assert_eq!(expected_regions(&model), count);
                if d == 2 || d == 3 {
                    assert_eq!(variance_closed_form(&model).unwrap(), 0.0);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn mean_is_monotone(n in 1u64..200, p in 0.0f64..=1.0, dp in 0.0f64..0.2, d in 1u32..6) {
        let base = expected_regions(&CutModel::new(n, p, d).unwrap());
        let more_p = expected_regions(&CutModel::new(n, (p + dp).min(1.0), d).unwrap());
        let more_n = expected_regions(&CutModel::new(n + 1, p, d).unwrap());
        let more_d = expected_regions(&CutModel::new(n, p, d + 1).unwrap());
        prop_assert!(more_p >= base);
        prop_assert!(more_n >= base);
        prop_assert!(more_d >= base);
    }

    #[test]
    fn variance_is_consistent(n in 1u64..120, p in 0.0f64..=1.0, d in 2u32..4) {
        let model = CutModel::new(n, p, d).unwrap();
        let exact = exact_moments(&model, 1000).unwrap();
        let closed = variance_closed_form(&model).unwrap();
        prop_assert!(closed >= 0.0);
        let scale = exact.second_moment.unwrap();
        prop_assert!((exact.variance - closed).abs() <= 1e-9 * scale.max(1.0));
        let sm = exact.second_moment.unwrap();
        prop_assert!((exact.variance - (sm - exact.mean * exact.mean)).abs() <= 1e-9 * sm.max(1.0));
    }

    #[test]
    fn chebyshev_is_a_probability(n in 1u64..500, p in 0.0f64..=1.0, lambda in 1e-3f64..1e6) {
        let bound = chebyshev_tail(&CutModel::planar(n, p).unwrap(), lambda).unwrap();
        prop_assert!((0.0..=1.0).contains(&bound));
    }
}
