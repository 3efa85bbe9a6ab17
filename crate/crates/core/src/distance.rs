//! Pairwise alpha-distances and the Gini mean difference.

use crate::error::{CgcError, Result};
use crate::sample::Alpha;
use crate::sum::ExactSum;

/// Number of unordered pairs among `m` items, as a float.
#[inline]
pub fn pair_count(m: usize) -> f64 {
    let m = m as f64;
    m * (m - 1.0) / 2.0
}

/// `‖a − b‖^alpha` with unchecked lengths. Hot-loop variant of [`pairwise_distance`].
#[inline]
pub(crate) fn alpha_distance(a: &[f64], b: &[f64], alpha: Alpha) -> f64 {
    if a.len() == 1 {
        let diff = (a[0] - b[0]).abs();
        return if alpha.is_one() { diff } else { diff.powf(alpha.value()) };
    }
    let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    if alpha.is_one() {
        sq.sqrt()
    } else {
        sq.powf(0.5 * alpha.value())
    }
}

/// Euclidean distance between `a` and `b` raised to `alpha`.
pub fn pairwise_distance(a: &[f64], b: &[f64], alpha: Alpha) -> Result<f64> {
    if a.len() != b.len() {
        return Err(CgcError::InvalidInput(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(CgcError::InvalidInput("non-finite coordinate".into()));
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    Ok(alpha_distance(a, b, alpha))
}

/// Brute-force Gini mean difference over unordered pairs of the `m` rows of `points`
/// (row-major, `d` columns). O(m²·d).
pub fn gini_mean_difference(points: &[f64], d: usize, alpha: Alpha) -> Result<f64> {
    if d == 0 || !points.len().is_multiple_of(d) {
        return Err(CgcError::InvalidInput(format!(
            "buffer of length {} does not hold rows of width {d}",
            points.len()
        )));
    }
    let m = points.len() / d;
    if m < 2 {
        return Err(CgcError::InsufficientData { required: 2, actual: m });
    }
    let mut total = 0.0;
    for i in 0..m {
        let a = &points[i * d..(i + 1) * d];
        for j in i + 1..m {
            total += alpha_distance(a, &points[j * d..(j + 1) * d], alpha);
        }
    }
    Ok(total / pair_count(m))
}

/// Gini mean difference of univariate data with alpha = 1, via order statistics.
///
/// Sorts a copy and evaluates `Σ (2i − m − 1)·x₍ᵢ₎ / C(m, 2)` in O(m log m).
/// The weighted sum is accumulated exactly, so the result does not depend on
/// the input order.
pub fn gini_mean_difference_sorted(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(CgcError::InsufficientData {
            required: 2,
            actual: values.len(),
        });
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(sorted_pair_sum(&sorted) / pair_count(sorted.len()))
}

/// `Σ_{i<j} |x_i − x_j|` for already sorted data.
pub(crate) fn sorted_pair_sum(sorted: &[f64]) -> f64 {
    let m = sorted.len() as f64;
    let mut acc = ExactSum::new();
    for (i, &x) in sorted.iter().enumerate() {
        acc.add_product(2.0 * (i as f64 + 1.0) - m - 1.0, x);
    }
    // exact arithmetic keeps this nonnegative; max guards -0.0
    acc.value().max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(pairwise_distance(&[0.0, 0.0], &[3.0, 4.0], a(1.0)).unwrap(), 5.0);
        let x = [1.5, -2.0, 7.25];
        assert_eq!(pairwise_distance(&x, &x, a(0.5)).unwrap(), 0.0);
        let root5 = pairwise_distance(&[0.0, 0.0], &[3.0, 4.0], a(0.5)).unwrap();
        assert!((root5 - 2.236_067_977_499_79).abs() < 1e-14);
        assert!(matches!(
            pairwise_distance(&[0.0], &[1.0, 2.0], a(1.0)),
            Err(CgcError::InvalidInput(_))
        ));
    }

    #[test]
    fn distance_symmetric() {
        let p = [0.3, -1.2, 4.0];
        let q = [2.0, 0.5, -3.5];
        for al in [0.3, 1.0, 1.7] {
            assert_eq!(
                pairwise_distance(&p, &q, a(al)).unwrap(),
                pairwise_distance(&q, &p, a(al)).unwrap()
            );
        }
    }

    #[test]
    fn gmd_examples() {
        let pts = [0.0, 1.0, 2.0, 3.0];
        assert!((gini_mean_difference(&pts, 1, a(1.0)).unwrap() - 10.0 / 6.0).abs() < 1e-15);
        // brute force: (3 + 2√2 + √3) / 6
        let expected = (3.0 + 2.0 * 2f64.sqrt() + 3f64.sqrt()) / 6.0;
        assert!((expected - 1.260_080).abs() < 1e-6);
        assert!((gini_mean_difference(&pts, 1, a(0.5)).unwrap() - expected).abs() < 1e-15);
        assert_eq!(
            gini_mean_difference(&[2.0, 1.0, 2.0, 1.0, 2.0, 1.0], 2, a(1.0)).unwrap(),
            0.0
        );
        assert!(matches!(
            gini_mean_difference(&[1.0, 2.0], 2, a(1.0)),
            Err(CgcError::InsufficientData { .. })
        ));
    }

    #[test]
    fn sorted_examples() {
        assert_eq!(gini_mean_difference_sorted(&[3.0, 0.0, 2.0, 1.0]).unwrap(), 5.0 / 3.0);
        assert_eq!(gini_mean_difference_sorted(&[5.0, 5.0, 5.0]).unwrap(), 0.0);
        assert!(matches!(
            gini_mean_difference_sorted(&[1.0]),
            Err(CgcError::InsufficientData { .. })
        ));
    }
}
