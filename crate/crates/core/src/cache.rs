//! Pairwise distance cache and per-row distance sums.
//!
//! Everything downstream of the point estimate (leave-one-out updates,
//! permutation replicates) only needs the per-row sums or the distance
//! triangle, so both are computed once and shared read-only.

use crate::distance::{alpha_distance, pair_count};
use crate::engine::Engine;
use crate::error::{CgcError, Result};
use crate::sample::{Alpha, ClassPartition, LabeledSample};
use crate::sum::{exact_sum, ExactSum};

/// Per-row sums of distances to all other rows and to same-class rows.
///
/// `grand_total` and `class_total` are half the exact sums of the row totals,
/// so the consistency identities hold bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSums {
    row_total: Vec<f64>,
    row_within: Vec<f64>,
    grand_total: f64,
    class_total: Vec<f64>,
}

impl RowSums {
    pub(crate) fn from_rows(row_total: Vec<f64>, row_within: Vec<f64>, partition: &ClassPartition) -> Self {
        let grand_total = 0.5 * exact_sum(row_total.iter().copied());
        let class_total = (0..partition.k())
            .map(|k| 0.5 * exact_sum(partition.members(k).iter().map(|&i| row_within[i])))
            .collect();
        RowSums {
            row_total,
            row_within,
            grand_total,
            class_total,
        }
    }

    /// Σ_j dist(i, j) for every row i.
    pub fn row_total(&self) -> &[f64] {
        &self.row_total
    }

    /// Σ_j dist(i, j) over rows j sharing row i's class.
    pub fn row_within(&self) -> &[f64] {
        &self.row_within
    }

    /// Σ_{i<j} dist(i, j).
    pub fn grand_total(&self) -> f64 {
        self.grand_total
    }

    /// Σ_{i<j, both in class k} dist(i, j), in partition order.
    pub fn class_total(&self) -> &[f64] {
        &self.class_total
    }

    /// Overall and per-class Gini mean differences.
    pub fn gini_components(&self, partition: &ClassPartition) -> (f64, Vec<f64>) {
        let overall = self.grand_total / pair_count(partition.n());
        let within = self
            .class_total
            .iter()
            .zip(partition.counts())
            .map(|(&s, m)| if m < 2 { 0.0 } else { s / pair_count(m) })
            .collect();
        (overall, within)
    }
}

/// Upper-triangular matrix of alpha-distances together with its [`RowSums`].
#[derive(Debug, Clone)]
pub struct DistanceCache {
    n: usize,
    alpha: Alpha,
    tri: Vec<f64>,
    sums: RowSums,
}

#[inline]
fn row_offset(n: usize, i: usize) -> usize {
    i * n - i * (i + 1) / 2
}

impl DistanceCache {
    /// Distances and sums for `sample`. Fails with `ResourceLimit` when the
    /// sample is larger than the engine's cache cap.
    pub fn build(sample: &LabeledSample, partition: &ClassPartition, alpha: Alpha, engine: &Engine) -> Result<Self> {
        let n = sample.n();
        if n > engine.cache_cap() {
            return Err(CgcError::ResourceLimit {
                rows: n,
                cap: engine.cache_cap(),
            });
        }
        let mut tri = vec![0.0; n * (n - 1) / 2];
        {
            let mut rows: Vec<&mut [f64]> = Vec::with_capacity(n);
            let mut rest = tri.as_mut_slice();
            for i in 0..n {
                let (head, tail) = rest.split_at_mut(n - 1 - i);
                rows.push(head);
                rest = tail;
            }
            engine.fill(&mut rows, |i, row| {
                let a = sample.row(i);
                for (slot, j) in row.iter_mut().zip(i + 1..n) {
                    *slot = alpha_distance(a, sample.row(j), alpha);
                }
            });
        }

        let assignment = partition.assignment();
        let pairs = engine.map(n, |i| {
            let mut total = ExactSum::new();
            let mut within = ExactSum::new();
            let class = assignment[i];
            for j in 0..i {
                let v = tri[row_offset(n, j) + i - j - 1];
                total.add(v);
                if assignment[j] == class {
                    within.add(v);
                }
            }
            let start = row_offset(n, i);
            for (v, j) in tri[start..start + n - 1 - i].iter().zip(i + 1..n) {
                total.add(*v);
                if assignment[j] == class {
                    within.add(*v);
                }
            }
            (total.value(), within.value())
        });
        let (row_total, row_within) = pairs.into_iter().unzip();
        Ok(DistanceCache {
            n,
            alpha,
            tri,
            sums: RowSums::from_rows(row_total, row_within, partition),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    /// Distance between rows `i` and `j`. Zero on the diagonal.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0.0,
            Less => self.tri[row_offset(self.n, i) + j - i - 1],
            Greater => self.tri[row_offset(self.n, j) + i - j - 1],
        }
    }

    /// Distances from row `i` to rows `i+1..n`.
    #[inline]
    pub fn upper_row(&self, i: usize) -> &[f64] {
        let start = row_offset(self.n, i);
        &self.tri[start..start + self.n - 1 - i]
    }

    pub fn sums(&self) -> &RowSums {
        &self.sums
    }

    /// Per-class pair sums under an arbitrary class assignment of the rows.
    pub fn class_totals_for(&self, assignment: &[usize], k: usize) -> Vec<f64> {
        let mut totals = vec![0.0; k];
        for i in 0..self.n {
            let class = assignment[i];
            let mut s = 0.0;
            for (v, &c) in self.upper_row(i).iter().zip(&assignment[i + 1..]) {
                if c == class {
                    s += v;
                }
            }
            totals[class] += s;
        }
        totals
    }
}

/// [`RowSums`] computed without materializing the distance triangle.
/// O(n²·d) time and O(n) memory; values match [`DistanceCache::build`] exactly.
pub fn streaming_row_sums(
    sample: &LabeledSample,
    partition: &ClassPartition,
    alpha: Alpha,
    engine: &Engine,
) -> RowSums {
    let n = sample.n();
    let assignment = partition.assignment();
    let pairs = engine.map(n, |i| {
        let a = sample.row(i);
        let class = assignment[i];
        let mut total = ExactSum::new();
        let mut within = ExactSum::new();
        for j in (0..n).filter(|&j| j != i) {
            let v = alpha_distance(a, sample.row(j), alpha);
            total.add(v);
            if assignment[j] == class {
                within.add(v);
            }
        }
        (total.value(), within.value())
    });
    let (row_total, row_within) = pairs.into_iter().unzip();
    RowSums::from_rows(row_total, row_within, partition)
}

/// Streaming per-class pair sums under an arbitrary class assignment.
pub(crate) fn streaming_class_totals(sample: &LabeledSample, alpha: Alpha, assignment: &[usize], k: usize) -> Vec<f64> {
    let n = sample.n();
    let mut totals = vec![0.0; k];
    for i in 0..n {
        let a = sample.row(i);
        let class = assignment[i];
        let mut s = 0.0;
        for (j, &other) in assignment.iter().enumerate().skip(i + 1) {
            if other == class {
                s += alpha_distance(a, sample.row(j), alpha);
            }
        }
        totals[class] += s;
    }
    totals
}

/// Row sums for univariate data with alpha = 1, from one sort and prefix sums.
/// O(n log n). Values are shifted by the median before summation.
pub fn univariate_row_sums(values: &[f64], partition: &ClassPartition) -> RowSums {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut row_total = vec![0.0; n];
    sorted_row_sums(values, &order, &mut row_total);

    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); partition.k()];
    let assignment = partition.assignment();
    for &i in &order {
        by_class[assignment[i]].push(i);
    }
    let mut row_within = vec![0.0; n];
    for members in &by_class {
        sorted_row_sums(values, members, &mut row_within);
    }
    RowSums::from_rows(row_total, row_within, partition)
}

/// For indices `order` sorted by value, writes Σ_{j in order} |x_i − x_j| into `out[i]`.
fn sorted_row_sums(values: &[f64], order: &[usize], out: &mut [f64]) {
    let m = order.len();
    if m == 0 {
        return;
    }
    let center = values[order[m / 2]];
    let shifted: Vec<f64> = order.iter().map(|&i| values[i] - center).collect();

    // prefix[r] = Σ_{s<r} shifted[s], compensated
    let mut prefix = Vec::with_capacity(m + 1);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    prefix.push(0.0);
    for &x in &shifted {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
        prefix.push(sum + comp);
    }
    let total = prefix[m];
    for (r, (&i, &x)) in order.iter().zip(&shifted).enumerate() {
        let below = x * r as f64 - prefix[r];
        let above = (total - prefix[r + 1]) - x * (m - 1 - r) as f64;
        out[i] = (below + above).max(0.0);
    }
}
