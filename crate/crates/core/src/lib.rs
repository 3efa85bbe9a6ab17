//! Categorical Gini correlation between a numeric vector and a categorical label.
//!
//! The estimator is `ρ̂ = (U − Σ_k p̂_k U_k) / U`, where `U` is the Gini mean
//! difference of all rows (average alpha-distance over unordered pairs) and
//! `U_k` the same statistic within class `k`. On top of the point estimate the
//! crate provides jackknife confidence intervals, a permutation test of
//! independence and marginal feature screening. All of them share one set of
//! pairwise distances per sample.
//!
//! ```
//! use cgc::{Alpha, Engine, LabeledSample};
//!
//! let sample = LabeledSample::univariate(vec![0.0, 1.0, 2.0, 3.0], vec!["A", "A", "B", "B"]).unwrap();
//! let est = Engine::default().cgc(&sample, Alpha::ONE).unwrap();
//! assert!((est.rho - 0.4).abs() < 1e-12);
//! ```

pub mod api;
pub mod cache;
pub mod dataset;
pub mod distance;
pub mod engine;
pub mod error;
pub mod estimate;
pub mod jackknife;
pub mod permutation;
pub mod quantile;
pub mod sample;
pub mod screening;
pub mod sum;

pub use cache::{DistanceCache, RowSums};
pub use dataset::{write_csv, ColumnRef, FeatureSelection, LoadedTable, MissingPolicy, TableSpec};
pub use distance::{gini_mean_difference, gini_mean_difference_sorted, pairwise_distance};
pub use engine::{Engine, DEFAULT_CACHE_CAP};
pub use error::{CgcError, Result};
pub use estimate::{cgc, CgcEstimate, Strategy};
pub use jackknife::{confidence_interval, jackknife_variance, IntervalResult, JackknifeResult, DEFAULT_LEVEL};
pub use permutation::{
    independence_test, permutation_p_value, PermutationEngine, TestConfig, TestResult, DEFAULT_PERMUTATIONS,
    DEFAULT_SIGNIFICANCE,
};
pub use quantile::normal_quantile;
pub use sample::{Alpha, ClassPartition, LabeledSample};
pub use screening::{screen_features, ScreenedFeature, ScreeningResult};
