//! Categorical Gini correlation point estimate.

use serde::Serialize;

use crate::cache::{streaming_row_sums, DistanceCache, RowSums};
use crate::distance::{alpha_distance, pair_count, sorted_pair_sum};
use crate::engine::Engine;
use crate::error::{CgcError, Result};
use crate::sample::{Alpha, ClassPartition, LabeledSample};
use crate::sum::ExactSum;

/// How the pairwise sums are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Sorted when univariate with alpha = 1, cached below the engine's cap, streaming above it.
    Auto,
    /// Plain double loop over pairs.
    Naive,
    /// Order-statistic formula; univariate data with alpha = 1 only.
    Sorted,
    /// Materialized distance triangle.
    Cached,
    /// Row sums recomputed without storing the triangle.
    Streaming,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Naive => "naive",
            Strategy::Sorted => "sorted",
            Strategy::Cached => "cached",
            Strategy::Streaming => "streaming",
        }
    }

    /// Concrete strategy `Auto` picks for a sample of this shape.
    pub fn resolve(self, n: usize, d: usize, alpha: Alpha, cache_cap: usize) -> Strategy {
        match self {
            Strategy::Auto if d == 1 && alpha.is_one() => Strategy::Sorted,
            Strategy::Auto if n <= cache_cap => Strategy::Cached,
            Strategy::Auto => Strategy::Streaming,
            other => other,
        }
    }
}

/// Point estimate together with the U-statistics it was built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CgcEstimate {
    pub rho: f64,
    pub u_overall: f64,
    pub u_within: Vec<f64>,
    #[serde(rename = "pHat")]
    pub proportions: Vec<f64>,
    pub classes: Vec<String>,
    pub alpha: f64,
    pub n: usize,
    pub d: usize,
    #[serde(rename = "K")]
    pub k: usize,
}

/// `(U − Σ p_k U_k) / U`, with the weighted sum formed exactly so it does not
/// depend on class order. Errors when `U` is zero.
pub(crate) fn correlation(u_overall: f64, u_within: &[f64], proportions: &[f64]) -> Result<f64> {
    if u_overall <= 0.0 {
        return Err(CgcError::DegenerateSample(
            "all observations coincide; the overall Gini mean difference is zero".into(),
        ));
    }
    let mut weighted = ExactSum::new();
    for (&p, &u) in proportions.iter().zip(u_within) {
        weighted.add_product(p, u);
    }
    Ok((u_overall - weighted.value()) / u_overall)
}

/// Gini components under the given class assignment, computed by a plain double loop.
fn naive_components(sample: &LabeledSample, partition: &ClassPartition, alpha: Alpha) -> (f64, Vec<f64>) {
    let n = sample.n();
    let assignment = partition.assignment();
    let mut total = 0.0;
    let mut within = vec![0.0; partition.k()];
    for i in 0..n {
        for j in i + 1..n {
            let v = alpha_distance(sample.row(i), sample.row(j), alpha);
            total += v;
            if assignment[i] == assignment[j] {
                within[assignment[i]] += v;
            }
        }
    }
    let u_within = within
        .iter()
        .zip(partition.counts())
        .map(|(&s, m)| s / pair_count(m))
        .collect();
    (total / pair_count(n), u_within)
}

fn sorted_components(sample: &LabeledSample, partition: &ClassPartition) -> (f64, Vec<f64>) {
    let values = sample.data();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut by_class: Vec<Vec<f64>> = partition.counts().into_iter().map(Vec::with_capacity).collect();
    let assignment = partition.assignment();
    let mut all = Vec::with_capacity(values.len());
    for &i in &order {
        all.push(values[i]);
        by_class[assignment[i]].push(values[i]);
    }
    let overall = sorted_pair_sum(&all) / pair_count(all.len());
    let within = by_class
        .iter()
        .map(|v| sorted_pair_sum(v) / pair_count(v.len()))
        .collect();
    (overall, within)
}

pub(crate) fn estimate_from_components(
    sample: &LabeledSample,
    partition: &ClassPartition,
    alpha: Alpha,
    u_overall: f64,
    u_within: Vec<f64>,
) -> Result<CgcEstimate> {
    let proportions = partition.proportions();
    let rho = correlation(u_overall, &u_within, &proportions)?;
    Ok(CgcEstimate {
        rho,
        u_overall,
        u_within,
        proportions,
        classes: partition.labels().to_vec(),
        alpha: alpha.value(),
        n: sample.n(),
        d: sample.d(),
        k: partition.k(),
    })
}

/// Estimate from precomputed row sums.
pub fn cgc_from_sums(
    sample: &LabeledSample,
    partition: &ClassPartition,
    alpha: Alpha,
    sums: &RowSums,
) -> Result<CgcEstimate> {
    partition.require_min_size(2)?;
    let (u, within) = sums.gini_components(partition);
    estimate_from_components(sample, partition, alpha, u, within)
}

impl Engine {
    /// Categorical Gini correlation with automatic strategy selection.
    pub fn cgc(&self, sample: &LabeledSample, alpha: Alpha) -> Result<CgcEstimate> {
        self.cgc_with(sample, alpha, Strategy::Auto)
    }

    pub fn cgc_with(&self, sample: &LabeledSample, alpha: Alpha, strategy: Strategy) -> Result<CgcEstimate> {
        let partition = sample.partition();
        partition.require_min_size(2)?;
        let strategy = strategy.resolve(sample.n(), sample.d(), alpha, self.cache_cap());
        let (u, within) = match strategy {
            Strategy::Naive => naive_components(sample, &partition, alpha),
            Strategy::Sorted => {
                if sample.d() != 1 || !alpha.is_one() {
                    return Err(CgcError::InvalidInput(
                        "the sorted strategy needs univariate data and alpha = 1".into(),
                    ));
                }
                sorted_components(sample, &partition)
            }
            Strategy::Cached => DistanceCache::build(sample, &partition, alpha, self)?
                .sums()
                .gini_components(&partition),
            Strategy::Streaming => streaming_row_sums(sample, &partition, alpha, self).gini_components(&partition),
            Strategy::Auto => unreachable!("resolved above"),
        };
        estimate_from_components(sample, &partition, alpha, u, within)
    }
}

/// Categorical Gini correlation on the default engine.
pub fn cgc(sample: &LabeledSample, alpha: Alpha) -> Result<CgcEstimate> {
    Engine::default().cgc(sample, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(x: &[f64], y: &[&str]) -> LabeledSample {
        LabeledSample::univariate(x.to_vec(), y.to_vec()).unwrap()
    }

    const ALL: [Strategy; 4] = [Strategy::Naive, Strategy::Sorted, Strategy::Cached, Strategy::Streaming];

    #[test]
    fn hand_values() {
        let e = Engine::sequential();
        for strategy in ALL {
            let est = e
                .cgc_with(&uni(&[0.0, 1.0, 2.0, 3.0], &["A", "A", "B", "B"]), Alpha::ONE, strategy)
                .unwrap();
            assert!((est.rho - 0.4).abs() < 1e-12, "{strategy:?} {}", est.rho);
            assert!((est.u_overall - 5.0 / 3.0).abs() < 1e-15);
            assert_eq!(est.u_within, [1.0, 1.0]);

            let est = e
                .cgc_with(&uni(&[0.0, 0.0, 1.0, 1.0], &["A", "A", "B", "B"]), Alpha::ONE, strategy)
                .unwrap();
            assert_eq!(est.rho, 1.0);

            let est = e
                .cgc_with(
                    &uni(&[0.0, 10.0, 4.0, 6.0], &["A", "A", "B", "B"]),
                    Alpha::ONE,
                    strategy,
                )
                .unwrap();
            assert!((est.rho + 0.125).abs() < 1e-12, "{strategy:?} {}", est.rho);
            assert!((est.u_overall - 16.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn single_class_is_zero() {
        let s = uni(&[0.3, 1.7, -2.0, 5.5, 0.1], &["A"; 5]);
        for strategy in ALL {
            let est = Engine::sequential().cgc_with(&s, Alpha::ONE, strategy).unwrap();
            assert_eq!(est.rho, 0.0, "{strategy:?}");
            assert_eq!(est.k, 1);
        }
    }

    #[test]
    fn errors() {
        let e = Engine::default();
        assert!(matches!(
            e.cgc(&uni(&[1.0, 2.0, 3.0], &["A", "A", "B"]), Alpha::ONE),
            Err(CgcError::InsufficientClassSize { size: 1, .. })
        ));
        assert!(matches!(
            e.cgc(&uni(&[2.0; 4], &["A", "A", "B", "B"]), Alpha::ONE),
            Err(CgcError::DegenerateSample(_))
        ));
        let bi = LabeledSample::new(
            vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0],
            2,
            vec!["A", "A", "B", "B"],
        )
        .unwrap();
        assert!(matches!(
            e.cgc_with(&bi, Alpha::ONE, Strategy::Sorted),
            Err(CgcError::InvalidInput(_))
        ));
    }

    #[test]
    fn auto_resolution() {
        let half = Alpha::new(0.5).unwrap();
        assert_eq!(Strategy::Auto.resolve(10, 1, Alpha::ONE, 5), Strategy::Sorted);
        assert_eq!(Strategy::Auto.resolve(10, 1, half, 50), Strategy::Cached);
        assert_eq!(Strategy::Auto.resolve(10, 2, Alpha::ONE, 5), Strategy::Streaming);
        assert_eq!(Strategy::Naive.resolve(10, 1, Alpha::ONE, 5), Strategy::Naive);
    }

    #[test]
    fn multivariate_strategies_agree() {
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|i| vec![(i as f64 * 0.7).sin() * 3.0, (i as f64 * 1.3).cos() + i as f64 * 0.1])
            .collect();
        let labels: Vec<&str> = (0..12).map(|i| ["x", "y", "z"][i % 3]).collect();
        let s = LabeledSample::from_rows(&rows, labels).unwrap();
        let alpha = Alpha::new(0.8).unwrap();
        let e = Engine::sequential();
        let reference = e.cgc_with(&s, alpha, Strategy::Naive).unwrap().rho;
        for strategy in [Strategy::Cached, Strategy::Streaming, Strategy::Auto] {
            let rho = e.cgc_with(&s, alpha, strategy).unwrap().rho;
            assert!((rho - reference).abs() < 1e-13, "{strategy:?}");
        }
    }
}
