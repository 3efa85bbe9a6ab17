//! Jackknife variance of the correlation estimate and normal-approximation intervals.
//!
//! Leave-one-out estimates come from O(K) updates of the row sums: removing
//! row `i` of class `c` subtracts its row total from the grand total and its
//! within-class sum from class `c`'s total.

use serde::Serialize;

use crate::cache::{streaming_row_sums, univariate_row_sums, DistanceCache, RowSums};
use crate::distance::pair_count;
use crate::engine::Engine;
use crate::error::{CgcError, Result};
use crate::estimate::{cgc_from_sums, correlation};
use crate::quantile::two_sided_critical;
use crate::sample::{Alpha, ClassPartition, LabeledSample};
use crate::sum::exact_sum;

pub const DEFAULT_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JackknifeResult {
    /// Jackknife estimate of the asymptotic variance of `√n (ρ̂ − ρ)`; equals `n · variance`.
    pub sigma2: f64,
    /// Jackknife estimate of `Var(ρ̂)`, `(n − 1)/n · Σ (ρ̂₍₋ᵢ₎ − mean)²`.
    pub variance: f64,
    /// Leave-one-out estimates, row order.
    pub pseudo_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntervalResult {
    pub estimate: f64,
    pub stderr: f64,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pseudo_values: Option<Vec<f64>>,
}

fn row_sums_for(sample: &LabeledSample, partition: &ClassPartition, alpha: Alpha, engine: &Engine) -> Result<RowSums> {
    if sample.d() == 1 && alpha.is_one() {
        return Ok(univariate_row_sums(sample.data(), partition));
    }
    match DistanceCache::build(sample, partition, alpha, engine) {
        Ok(cache) => Ok(cache.sums().clone()),
        Err(CgcError::ResourceLimit { .. }) => Ok(streaming_row_sums(sample, partition, alpha, engine)),
        Err(e) => Err(e),
    }
}

/// Leave-one-out estimates from precomputed row sums.
pub fn leave_one_out(partition: &ClassPartition, sums: &RowSums, engine: &Engine) -> Result<Vec<f64>> {
    partition.require_min_size(3)?;
    let n = partition.n();
    let counts = partition.counts();
    let assignment = partition.assignment();
    let n_less = (n - 1) as f64;
    let base_within: Vec<f64> = sums
        .class_total()
        .iter()
        .zip(&counts)
        .map(|(&s, &m)| s / pair_count(m))
        .collect();
    let base_props: Vec<f64> = counts.iter().map(|&m| m as f64 / n_less).collect();

    let pseudo = engine.map(n, |i| {
        let c = assignment[i];
        let u = (sums.grand_total() - sums.row_total()[i]).max(0.0) / pair_count(n - 1);
        let mut within = base_within.clone();
        within[c] = (sums.class_total()[c] - sums.row_within()[i]).max(0.0) / pair_count(counts[c] - 1);
        let mut props = base_props.clone();
        props[c] = (counts[c] - 1) as f64 / n_less;
        correlation(u, &within, &props)
            .map_err(|_| CgcError::DegenerateSample(format!("leaving out row {i} leaves all observations identical")))
    });
    pseudo.into_iter().collect()
}

/// `(n − 1)/n · Σ (ρ̂₍₋ᵢ₎ − mean)²`, the jackknife estimate of `Var(ρ̂)`.
pub fn jackknife_estimator_variance(pseudo_values: &[f64]) -> f64 {
    let n = pseudo_values.len() as f64;
    let mean = exact_sum(pseudo_values.iter().copied()) / n;
    let ss = exact_sum(pseudo_values.iter().map(|v| (v - mean) * (v - mean)));
    (n - 1.0) / n * ss
}

impl Engine {
    pub fn jackknife_variance(&self, sample: &LabeledSample, alpha: Alpha) -> Result<JackknifeResult> {
        let partition = sample.partition();
        partition.require_min_size(3)?;
        let sums = row_sums_for(sample, &partition, alpha, self)?;
        let pseudo_values = leave_one_out(&partition, &sums, self)?;
        let variance = jackknife_estimator_variance(&pseudo_values);
        Ok(JackknifeResult {
            sigma2: variance * sample.n() as f64,
            variance,
            pseudo_values,
        })
    }

    /// Symmetric normal interval `ρ̂ ± z·σ̂/√n`, with `σ̂/√n` the jackknife standard
    /// error. Bounds are not clipped to [0, 1].
    pub fn confidence_interval(&self, sample: &LabeledSample, alpha: Alpha, level: f64) -> Result<IntervalResult> {
        let z = two_sided_critical(level)?;
        let partition = sample.partition();
        partition.require_min_size(3)?;
        let sums = row_sums_for(sample, &partition, alpha, self)?;
        let estimate = cgc_from_sums(sample, &partition, alpha, &sums)?.rho;
        let pseudo_values = leave_one_out(&partition, &sums, self)?;
        let stderr = jackknife_estimator_variance(&pseudo_values).sqrt();
        Ok(IntervalResult {
            estimate,
            stderr,
            lower: estimate - z * stderr,
            upper: estimate + z * stderr,
            level,
            pseudo_values: Some(pseudo_values),
        })
    }
}

pub fn jackknife_variance(sample: &LabeledSample, alpha: Alpha) -> Result<JackknifeResult> {
    Engine::default().jackknife_variance(sample, alpha)
}

pub fn confidence_interval(sample: &LabeledSample, alpha: Alpha, level: f64) -> Result<IntervalResult> {
    Engine::default().confidence_interval(sample, alpha, level)
}
