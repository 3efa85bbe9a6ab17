mod common;

use cgc::{permutation_p_value, Alpha, Engine, LabeledSample, PermutationEngine, Strategy as Route};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use common::*;

fn sample_strategy(max_d: usize) -> impl proptest::strategy::Strategy<Value = (LabeledSample, f64)> {
    (2usize..=3, 1..=max_d, 0usize..3).prop_flat_map(|(k, d, a)| {
        let alpha = [0.5, 1.0, 1.5][a];
        (2 * k..=24).prop_flat_map(move |n| {
            (
                prop::collection::vec(-100.0f64..100.0, n * d),
                prop::collection::vec(0..k, n - 2 * k),
            )
                .prop_map(move |(data, extra)| {
                    let labels: Vec<String> = (0..2 * k)
                        .map(|i| i % k)
                        .chain(extra)
                        .map(|c| format!("L{c}"))
                        .collect();
                    (LabeledSample::new(data, d, labels).unwrap(), alpha)
                })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn all_strategies_match_brute_force((sample, alpha) in sample_strategy(3)) {
        let oracle = brute_cgc(&sample, alpha);
        prop_assume!(oracle.u > 0.0);
        let a = Alpha::new(alpha).unwrap();
        let engine = Engine::sequential();
        for strategy in [Route::Auto, Route::Naive, Route::Cached, Route::Streaming] {
            let est = engine.cgc_with(&sample, a, strategy).unwrap();
            prop_assert!((est.rho - oracle.rho).abs() <= 1e-12 * oracle.rho.abs().max(1.0));
            prop_assert!(est.rho <= 1.0);
        }
    }

    #[test]
    fn sorted_matches_cached_univariate((sample, _) in sample_strategy(1)) {
        let e = Engine::sequential();
        let sorted = e.cgc_with(&sample, Alpha::ONE, Route::Sorted);
        let cached = e.cgc_with(&sample, Alpha::ONE, Route::Cached);
        match (sorted, cached) {
            (Ok(s), Ok(c)) => {
                prop_assert!((s.u_overall - c.u_overall).abs() <= 1e-12 * c.u_overall);
                prop_assert!((s.rho - c.rho).abs() <= 1e-12 * c.rho.abs().max(1.0));
            }
            (Err(_), Err(_)) => {}
            (s, c) => prop_assert!(false, "strategies disagree on validity: {:?} / {:?}", s, c),
        }
    }

    #[test]
    fn perfect_separation_gives_one(gap in 1.0f64..50.0, n in 2usize..10) {
        let mut x = vec![0.0; n];
        x.extend(std::iter::repeat_n(gap, n));
        let y: Vec<&str> = (0..2 * n).map(|i| if i < n { "a" } else { "b" }).collect();
        let s = LabeledSample::univariate(x, y).unwrap();
        prop_assert_eq!(Engine::default().cgc(&s, Alpha::new(0.7).unwrap()).unwrap().rho, 1.0);
    }

    #[test]
    fn larger_statistic_never_larger_p(null in prop::collection::vec(-1.0f64..1.0, 1..50), a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(permutation_p_value(hi, &null) <= permutation_p_value(lo, &null));
        prop_assert!(permutation_p_value(lo, &null) >= 1.0 / (null.len() + 1) as f64);
    }
}

#[test]
fn separated_p_value_approaches_tenth() {
    // 2 of the 20 balanced assignments reach rho = 1
    let s = LabeledSample::univariate(vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0], vec!["A", "A", "A", "B", "B", "B"]).unwrap();
    let r = Engine::default()
        .independence_test(&s, Alpha::ONE, &cgc::TestConfig::new(20_000, 1))
        .unwrap();
    assert!((r.p_value - 0.1).abs() < 0.01, "{}", r.p_value);
}

#[test]
fn observed_statistic_matches_cgc_route_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sample = random_sample(&mut rng, 40, 2, 3, 2);
    let perm = PermutationEngine::new(&sample, Alpha::ONE, &Engine::default()).unwrap();
    let oracle = brute_cgc(&sample, 1.0).rho;
    assert!((perm.observed_statistic() - oracle).abs() < 1e-12);
}

#[test]
fn interval_width_shrinks_with_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let g = [Normal::new(0.0, 1.0).unwrap(), Normal::new(1.0, 1.0).unwrap()];
    let mut median_width = |per_class: usize| {
        let mut widths: Vec<f64> = (0..41)
            .map(|_| {
                let mut x = Vec::new();
                let mut y = Vec::new();
                for (k, dist) in g.iter().enumerate() {
                    for _ in 0..per_class {
                        x.push(dist.sample(&mut rng));
                        y.push(k.to_string());
                    }
                }
                let s = LabeledSample::univariate(x, y).unwrap();
                let ci = Engine::default().confidence_interval(&s, Alpha::ONE, 0.95).unwrap();
                ci.upper - ci.lower
            })
            .collect();
        widths.sort_by(f64::total_cmp);
        widths[20]
    };
    let small = median_width(50);
    let large = median_width(200);
    assert!(large < small, "{large} vs {small}");
}

#[test]
fn streaming_beyond_cap_matches_cache() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sample = random_sample(&mut rng, 60, 3, 2, 3);
    let alpha = Alpha::new(1.2).unwrap();
    let capped = Engine::default().with_cache_cap(10);
    let full = Engine::default();
    assert_eq!(
        capped.cgc(&sample, alpha).unwrap().rho.to_bits(),
        full.cgc(&sample, alpha).unwrap().rho.to_bits()
    );
    let a = capped.jackknife_variance(&sample, alpha).unwrap();
    let b = full.jackknife_variance(&sample, alpha).unwrap();
    assert_eq!(a, b);
    let cfg = cgc::TestConfig::new(50, 3);
    let a = capped.independence_test(&sample, alpha, &cfg).unwrap();
    let b = full.independence_test(&sample, alpha, &cfg).unwrap();
    assert!((a.statistic - b.statistic).abs() < 1e-12);
    assert_eq!(a.exceedances, b.exceedances);
}
