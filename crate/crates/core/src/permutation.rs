//! Permutation test of independence between the features and the label.
//!
//! Shuffling labels leaves every pairwise distance and therefore the overall
//! Gini mean difference unchanged; each replicate only recomputes the
//! within-class sums. Replicate `b` draws its permutation from a ChaCha8
//! stream keyed by `(seed, b)`, so results do not depend on scheduling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{streaming_class_totals, streaming_row_sums, DistanceCache};
use crate::distance::{pair_count, sorted_pair_sum};
use crate::engine::Engine;
use crate::error::{CgcError, Result};
use crate::estimate::correlation;
use crate::sample::{Alpha, LabeledSample};

pub const DEFAULT_PERMUTATIONS: usize = 1000;
pub const DEFAULT_SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    pub permutations: usize,
    pub seed: u64,
    pub significance: f64,
}

impl TestConfig {
    pub fn new(permutations: usize, seed: u64) -> Self {
        TestConfig {
            permutations,
            seed,
            significance: DEFAULT_SIGNIFICANCE,
        }
    }

    pub fn with_significance(mut self, significance: f64) -> Self {
        self.significance = significance;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub permutations: usize,
    /// Replicates whose statistic reached the observed one.
    pub exceedances: usize,
    pub rejected: bool,
    pub significance: f64,
    pub seed: u64,
}

/// Add-one permutation p-value, counting ties as extreme.
pub fn permutation_p_value(observed: f64, null: &[f64]) -> f64 {
    let count = null.iter().filter(|&&s| s >= observed).count();
    (1 + count) as f64 / (null.len() + 1) as f64
}

/// The generator replicate `index` of a run seeded with `seed` draws from.
pub fn replicate_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Computes the statistic for arbitrary relabelings of a fixed sample.
enum Evaluator<'a> {
    /// Univariate, alpha = 1: values in sorted order with their row indices.
    Sorted {
        centered: Vec<f64>,
        order: Vec<usize>,
    },
    Cached(DistanceCache),
    Streaming(&'a LabeledSample),
}

pub struct PermutationEngine<'a> {
    evaluator: Evaluator<'a>,
    alpha: Alpha,
    counts: Vec<usize>,
    proportions: Vec<f64>,
    observed: Vec<usize>,
    u_overall: f64,
}

impl<'a> PermutationEngine<'a> {
    pub fn new(sample: &'a LabeledSample, alpha: Alpha, engine: &Engine) -> Result<Self> {
        let partition = sample.partition();
        partition.require_min_size(2)?;
        let n = sample.n();
        let (evaluator, u_overall) = if sample.d() == 1 && alpha.is_one() {
            let values = sample.data();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]));
            let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
            let u = sorted_pair_sum(&sorted) / pair_count(n);
            let center = sorted[n / 2];
            let centered = sorted.iter().map(|v| v - center).collect();
            (Evaluator::Sorted { centered, order }, u)
        } else {
            match DistanceCache::build(sample, &partition, alpha, engine) {
                Ok(cache) => {
                    let u = cache.sums().gini_components(&partition).0;
                    (Evaluator::Cached(cache), u)
                }
                Err(CgcError::ResourceLimit { .. }) => {
                    let u = streaming_row_sums(sample, &partition, alpha, engine)
                        .gini_components(&partition)
                        .0;
                    (Evaluator::Streaming(sample), u)
                }
                Err(e) => return Err(e),
            }
        };
        if u_overall <= 0.0 {
            return Err(CgcError::DegenerateSample(
                "all observations coincide; the overall Gini mean difference is zero".into(),
            ));
        }
        Ok(PermutationEngine {
            evaluator,
            alpha,
            counts: partition.counts(),
            proportions: partition.proportions(),
            observed: partition.assignment().to_vec(),
            u_overall,
        })
    }

    fn class_totals(&self, assignment: &[usize]) -> Vec<f64> {
        let k = self.counts.len();
        match &self.evaluator {
            Evaluator::Sorted { centered, order } => {
                let mut rank = vec![0usize; k];
                let mut totals = vec![0.0; k];
                for (&x, &row) in centered.iter().zip(order) {
                    let c = assignment[row];
                    rank[c] += 1;
                    totals[c] += (2.0 * rank[c] as f64 - self.counts[c] as f64 - 1.0) * x;
                }
                totals
            }
            Evaluator::Cached(cache) => cache.class_totals_for(assignment, k),
            Evaluator::Streaming(sample) => streaming_class_totals(sample, self.alpha, assignment, k),
        }
    }

    /// Statistic for a relabeling given as a class index per row. Class sizes must
    /// match the observed partition.
    pub fn statistic(&self, assignment: &[usize]) -> f64 {
        let within: Vec<f64> = self
            .class_totals(assignment)
            .iter()
            .zip(&self.counts)
            .map(|(&s, &m)| s.max(0.0) / pair_count(m))
            .collect();
        correlation(self.u_overall, &within, &self.proportions).expect("overall spread checked at construction")
    }

    pub fn observed_statistic(&self) -> f64 {
        self.statistic(&self.observed)
    }

    /// Statistic under the permutation drawn for replicate `index`.
    pub fn replicate(&self, seed: u64, index: usize) -> f64 {
        let mut labels = self.observed.clone();
        labels.shuffle(&mut replicate_rng(seed, index));
        self.statistic(&labels)
    }

    pub fn null_distribution(&self, seed: u64, permutations: usize, engine: &Engine) -> Vec<f64> {
        engine.map(permutations, |b| self.replicate(seed, b))
    }
}

impl Engine {
    pub fn independence_test(&self, sample: &LabeledSample, alpha: Alpha, config: &TestConfig) -> Result<TestResult> {
        if config.permutations < 1 {
            return Err(CgcError::InvalidInput("at least one permutation is required".into()));
        }
        if !(config.significance > 0.0 && config.significance < 1.0) {
            return Err(CgcError::InvalidInput(format!(
                "significance must lie in (0, 1), got {}",
                config.significance
            )));
        }
        let perm = PermutationEngine::new(sample, alpha, self)?;
        let statistic = perm.observed_statistic();
        let null = perm.null_distribution(config.seed, config.permutations, self);
        let exceedances = null.iter().filter(|&&s| s >= statistic).count();
        let p_value = permutation_p_value(statistic, &null);
        Ok(TestResult {
            statistic,
            p_value,
            permutations: config.permutations,
            exceedances,
            rejected: p_value <= config.significance,
            significance: config.significance,
            seed: config.seed,
        })
    }
}

pub fn independence_test(sample: &LabeledSample, alpha: Alpha, config: &TestConfig) -> Result<TestResult> {
    Engine::default().independence_test(sample, alpha, config)
}
