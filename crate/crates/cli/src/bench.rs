//! Wall-clock comparison of the estimation strategies on synthetic data.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use cgc::{Alpha, Engine, LabeledSample, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::{to_json, Failure, Outcome};

/// Largest disagreement tolerated between strategies.
const AGREEMENT: f64 = 1e-10;

pub struct Plan {
    sizes: Vec<usize>,
    dims: usize,
    repeats: usize,
    seed: u64,
}

impl Plan {
    pub fn new(sizes: Vec<usize>, dims: usize, repeats: usize, seed: u64) -> Self {
        Plan {
            sizes,
            dims,
            repeats,
            seed,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Record {
    strategy: &'static str,
    n: usize,
    d: usize,
    rho: f64,
    seconds: f64,
}

/// Three equally sized classes whose means differ by half a standard deviation.
fn synthetic(n: usize, d: usize, seed: u64) -> Result<LabeledSample, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("g{}", i % 3)).collect();
    let data = (0..n * d)
        .map(|i| {
            let z: f64 = StandardNormal.sample(&mut rng);
            z + 0.5 * ((i / d) % 3) as f64
        })
        .collect();
    Ok(LabeledSample::new(data, d, labels)?)
}

fn time<F: FnMut() -> Result<f64, Failure>>(repeats: usize, mut f: F) -> Result<(f64, Duration), Failure> {
    let mut best = Duration::MAX;
    let mut rho = f64::NAN;
    for _ in 0..repeats {
        let start = Instant::now();
        rho = f()?;
        best = best.min(start.elapsed());
    }
    Ok((rho, best))
}

pub fn run(plan: &Plan, alpha: Alpha, engine: &Engine, json: bool) -> Outcome {
    let mut strategies = vec![Strategy::Naive, Strategy::Cached, Strategy::Streaming];
    if plan.dims == 1 && alpha.is_one() {
        strategies.insert(1, Strategy::Sorted);
    }
    let mut records = Vec::new();
    for &n in &plan.sizes {
        let sample = synthetic(n, plan.dims, plan.seed ^ n as u64)?;
        let engine = engine.clone().with_cache_cap(engine.cache_cap().max(n));
        let first = records.len();
        for &strategy in &strategies {
            let (rho, elapsed) = time(plan.repeats, || Ok(engine.cgc_with(&sample, alpha, strategy)?.rho))?;
            records.push(Record {
                strategy: strategy.name(),
                n,
                d: plan.dims,
                rho,
                seconds: elapsed.as_secs_f64(),
            });
        }
        let reference = records[first].rho;
        if let Some(off) = records[first..].iter().find(|r| (r.rho - reference).abs() > AGREEMENT) {
            return Err(Failure::Mismatch(format!(
                "{} gives {} but naive gives {reference} at n = {n}",
                off.strategy, off.rho
            )));
        }
    }
    if json {
        return Ok(to_json(&records));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{:>8}  {:<10}  {:>12}  {:>10}  {:>8}",
        "n", "strategy", "rho", "seconds", "speedup"
    )
    .unwrap();
    for chunk in records.chunk_by(|a, b| a.n == b.n) {
        let naive = chunk[0].seconds;
        for r in chunk {
            writeln!(
                out,
                "{:>8}  {:<10}  {:>12.9}  {:>10.6}  {:>7.1}x",
                r.n,
                r.strategy,
                r.rho,
                r.seconds,
                naive / r.seconds.max(1e-9)
            )
            .unwrap();
        }
    }
    Ok(out)
}
