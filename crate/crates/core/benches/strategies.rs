use std::hint::black_box;

use cgc::{Alpha, ClassPartition, DistanceCache, Engine, LabeledSample, Strategy, TestConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn synthetic(n: usize, d: usize, seed: u64) -> LabeledSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| (i % 3).to_string()).collect();
    let data = (0..n * d)
        .map(|i| {
            let z: f64 = StandardNormal.sample(&mut rng);
            z + 0.5 * ((i / d) % 3) as f64 + rng.random_range(0.0..0.01)
        })
        .collect();
    LabeledSample::new(data, d, labels).unwrap()
}

fn estimate_strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("cgc_univariate");
    let engine = Engine::sequential();
    for n in [500, 1000, 2000, 4000] {
        let sample = synthetic(n, 1, n as u64);
        for strategy in [Strategy::Naive, Strategy::Sorted, Strategy::Cached, Strategy::Streaming] {
            group.bench_with_input(BenchmarkId::new(strategy.name(), n), &sample, |b, s| {
                b.iter(|| engine.cgc_with(black_box(s), Alpha::ONE, strategy).unwrap())
            });
        }
    }
    group.finish();
}

fn cache_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("cache_build");
    let sample = synthetic(2000, 4, 1);
    let partition: ClassPartition = sample.partition();
    let alpha = Alpha::new(1.5).unwrap();
    for (label, engine) in [("sequential", Engine::sequential()), ("parallel", Engine::default())] {
        group.bench_function(label, |b| {
            b.iter(|| DistanceCache::build(black_box(&sample), &partition, alpha, &engine).unwrap())
        });
    }
    group.finish();
}

fn permutation_replicates(c: &mut Criterion) {
    let mut group = c.benchmark_group("independence_test");
    group.sample_size(10);
    let sample = synthetic(300, 2, 2);
    let config = TestConfig::new(200, 7);
    for (label, engine) in [("sequential", Engine::sequential()), ("parallel", Engine::default())] {
        group.bench_function(label, |b| {
            b.iter(|| {
                engine
                    .independence_test(black_box(&sample), Alpha::ONE, &config)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn jackknife(c: &mut Criterion) {
    let mut group = c.benchmark_group("jackknife");
    let alpha = Alpha::new(0.5).unwrap();
    let sample = synthetic(1000, 3, 3);
    for (label, engine) in [("sequential", Engine::sequential()), ("parallel", Engine::default())] {
        group.bench_function(label, |b| {
            b.iter(|| engine.confidence_interval(black_box(&sample), alpha, 0.95).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    estimate_strategies,
    cache_build,
    permutation_replicates,
    jackknife
);
criterion_main!(benches);
