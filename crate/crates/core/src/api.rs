//! Flat entry points mirroring the `gcor` / `gcorCI` / `independence_test`
//! scripting interface. Inputs are a row-major buffer with `d` columns and one
//! label per row.

use crate::engine::Engine;
use crate::error::Result;
use crate::permutation::TestConfig;
use crate::sample::{Alpha, LabeledSample};

fn sample<S: AsRef<str>>(x: &[f64], d: usize, y: &[S]) -> Result<LabeledSample> {
    LabeledSample::new(x.to_vec(), d, y.iter().map(|s| s.as_ref().to_owned()).collect())
}

/// Correlation estimate.
pub fn gcor<S: AsRef<str>>(x: &[f64], d: usize, y: &[S], alpha: f64) -> Result<f64> {
    Ok(Engine::default().cgc(&sample(x, d, y)?, Alpha::new(alpha)?)?.rho)
}

/// `(lower, upper, estimate, stderr)` of the jackknife interval.
pub fn gcor_ci<S: AsRef<str>>(x: &[f64], d: usize, y: &[S], clevel: f64, alpha: f64) -> Result<(f64, f64, f64, f64)> {
    let ci = Engine::default().confidence_interval(&sample(x, d, y)?, Alpha::new(alpha)?, clevel)?;
    Ok((ci.lower, ci.upper, ci.estimate, ci.stderr))
}

/// `(p_value, rejected)`. A missing seed is drawn from the OS.
pub fn independence_test<S: AsRef<str>>(
    x: &[f64],
    d: usize,
    y: &[S],
    permutations: usize,
    seed: Option<u64>,
    significance: f64,
) -> Result<(f64, bool)> {
    let config = TestConfig::new(permutations, seed.unwrap_or_else(rand::random)).with_significance(significance);
    let r = Engine::default().independence_test(&sample(x, d, y)?, Alpha::ONE, &config)?;
    Ok((r.p_value, r.rejected))
}
