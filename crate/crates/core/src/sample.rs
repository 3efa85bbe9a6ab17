//! Labeled observations, class partitions and the distance exponent.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{CgcError, Result};

/// Exponent applied to the Euclidean distance. Restricted to the open interval (0, 2).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub const ONE: Alpha = Alpha(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 2.0 {
            Ok(Alpha(value))
        } else {
            Err(CgcError::InvalidInput(format!(
                "alpha must lie in the open interval (0, 2), got {value}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha::ONE
    }
}

impl TryFrom<f64> for Alpha {
    type Error = CgcError;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

impl From<Alpha> for f64 {
    fn from(alpha: Alpha) -> f64 {
        alpha.0
    }
}

/// An n x d matrix of observations with one class label per row.
///
/// Rows are stored contiguously (row-major). Labels are opaque strings and are
/// compared verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    data: Vec<f64>,
    n: usize,
    d: usize,
    labels: Vec<String>,
}

impl LabeledSample {
    /// Builds a sample from row-major `data` with `d` columns.
    pub fn new<S: Into<String>>(data: Vec<f64>, d: usize, labels: Vec<S>) -> Result<Self> {
        if d == 0 {
            return Err(CgcError::InvalidInput("at least one feature column is required".into()));
        }
        if !data.len().is_multiple_of(d) {
            return Err(CgcError::InvalidInput(format!(
                "data length {} is not a multiple of the column count {d}",
                data.len()
            )));
        }
        let n = data.len() / d;
        if labels.len() != n {
            return Err(CgcError::InvalidInput(format!(
                "{} labels supplied for {n} rows",
                labels.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(CgcError::InvalidInput(format!(
                "non-finite value {} at row {}, column {}",
                data[pos],
                pos / d,
                pos % d
            )));
        }
        if n < 2 {
            return Err(CgcError::InsufficientData { required: 2, actual: n });
        }
        Ok(LabeledSample {
            data,
            n,
            d,
            labels: labels.into_iter().map(Into::into).collect(),
        })
    }

    /// Single-feature convenience constructor.
    pub fn univariate<S: Into<String>>(values: Vec<f64>, labels: Vec<S>) -> Result<Self> {
        Self::new(values, 1, labels)
    }

    /// Builds a sample from a slice of rows. All rows must have the same length.
    pub fn from_rows<S: Into<String>>(rows: &[Vec<f64>], labels: Vec<S>) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(CgcError::InvalidInput("rows have differing lengths".into()));
        }
        Self::new(rows.concat(), d, labels)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }

    /// Row-major backing buffer.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Copies out column `j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    /// Sample restricted to a single column, labels shared.
    pub fn select_column(&self, j: usize) -> LabeledSample {
        LabeledSample {
            data: self.column(j),
            n: self.n,
            d: 1,
            labels: self.labels.clone(),
        }
    }

    /// Sample with row `i` removed. Fails if fewer than two rows would remain.
    pub fn without_row(&self, i: usize) -> Result<LabeledSample> {
        let mut data = Vec::with_capacity((self.n - 1) * self.d);
        let mut labels = Vec::with_capacity(self.n - 1);
        for (k, (row, label)) in self.rows().zip(&self.labels).enumerate() {
            if k != i {
                data.extend_from_slice(row);
                labels.push(label.clone());
            }
        }
        LabeledSample::new(data, self.d, labels)
    }

    pub fn partition(&self) -> ClassPartition {
        ClassPartition::from_labels(&self.labels).expect("sample has at least two rows")
    }
}

/// Row indices grouped by class, in first-appearance order of the labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPartition {
    labels: Vec<String>,
    members: Vec<Vec<usize>>,
    assignment: Vec<usize>,
}

impl ClassPartition {
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(CgcError::InvalidInput("label sequence is empty".into()));
        }
        let mut index: IndexMap<&str, Vec<usize>> = IndexMap::new();
        let mut assignment = Vec::with_capacity(labels.len());
        for (row, label) in labels.iter().enumerate() {
            let entry = index.entry(label.as_ref());
            assignment.push(entry.index());
            entry.or_default().push(row);
        }
        let (labels, members) = index.into_iter().map(|(label, rows)| (label.to_owned(), rows)).unzip();
        Ok(ClassPartition {
            labels,
            members,
            assignment,
        })
    }

    /// Number of classes K.
    #[inline]
    pub fn k(&self) -> usize {
        self.members.len()
    }

    /// Number of observations n.
    #[inline]
    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    /// Class index of every row.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn counts(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn proportions(&self) -> Vec<f64> {
        let n = self.n() as f64;
        self.members.iter().map(|m| m.len() as f64 / n).collect()
    }

    /// Fails with `InsufficientClassSize` for the first class smaller than `required`.
    pub fn require_min_size(&self, required: usize) -> Result<()> {
        match self.members.iter().position(|m| m.len() < required) {
            Some(k) => Err(CgcError::InsufficientClassSize {
                label: self.labels[k].clone(),
                size: self.members[k].len(),
                required,
            }),
            None => Ok(()),
        }
    }
}
