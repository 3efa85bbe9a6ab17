//! Delimited-text ingestion.
//!
//! Feature cells must parse as finite reals; labels are kept verbatim.
//! Missing cells are the empty string, `NA` and `NaN` (any case).

use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::PathBuf;

use crate::error::{CgcError, Result};
use crate::sample::LabeledSample;

/// A column chosen by header name or by 0-based position.
///
/// A name that matches no header but parses as an integer is used as a position.
/// Without a header the columns are named "0", "1", ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl From<&str> for ColumnRef {
    fn from(s: &str) -> Self {
        ColumnRef::Name(s.to_owned())
    }
}

impl From<usize> for ColumnRef {
    fn from(i: usize) -> Self {
        ColumnRef::Index(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum FeatureSelection {
    /// Every column other than the target whose non-missing cells are all numeric.
    #[default]
    AllNumeric,
    Columns(Vec<ColumnRef>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    #[default]
    Fail,
    DropRows,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub path: PathBuf,
    pub target: ColumnRef,
    pub features: FeatureSelection,
    pub missing: MissingPolicy,
    pub delimiter: u8,
    pub has_header: bool,
}

impl TableSpec {
    pub fn new(path: impl Into<PathBuf>, target: impl Into<ColumnRef>) -> Self {
        TableSpec {
            path: path.into(),
            target: target.into(),
            features: FeatureSelection::AllNumeric,
            missing: MissingPolicy::Fail,
            delimiter: b',',
            has_header: true,
        }
    }

    pub fn features<C: Into<ColumnRef>>(mut self, columns: impl IntoIterator<Item = C>) -> Self {
        self.features = FeatureSelection::Columns(columns.into_iter().map(Into::into).collect());
        self
    }

    pub fn missing(mut self, policy: MissingPolicy) -> Self {
        self.missing = policy;
        self
    }

    pub fn delimiter(mut self, delimiter: u8) -> Self {
        self.delimiter = delimiter;
        self
    }

    pub fn has_header(mut self, has_header: bool) -> Self {
        self.has_header = has_header;
        self
    }

    pub fn load(&self) -> Result<LoadedTable> {
        let file = std::fs::File::open(&self.path)?;
        self.load_from(file)
    }

    /// Same as [`TableSpec::load`], reading from `reader` instead of `path`.
    pub fn load_from<R: Read>(&self, reader: R) -> Result<LoadedTable> {
        let mut csv = csv::ReaderBuilder::new()
            .delimiter(self.delimiter)
            .has_headers(self.has_header)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let mut records = Vec::new();
        for record in csv.records() {
            records.push(record?);
        }
        let width = if self.has_header {
            csv.headers()?.len()
        } else {
            records.first().map_or(0, |r| r.len())
        };
        let headers: Vec<String> = if self.has_header {
            csv.headers()?.iter().map(str::to_owned).collect()
        } else {
            (0..width).map(|i| i.to_string()).collect()
        };

        let target = resolve(&headers, &self.target)?;
        let features = match &self.features {
            FeatureSelection::Columns(cols) => {
                let resolved = cols.iter().map(|c| resolve(&headers, c)).collect::<Result<Vec<_>>>()?;
                if resolved.contains(&target) {
                    return Err(CgcError::InvalidInput(format!(
                        "target column {:?} is also listed as a feature",
                        headers[target]
                    )));
                }
                resolved
            }
            FeatureSelection::AllNumeric => (0..width)
                .filter(|&j| j != target && is_numeric_column(&records, j))
                .collect(),
        };
        if features.is_empty() {
            return Err(CgcError::InvalidInput("no feature columns selected".into()));
        }
        let mut seen = HashSet::new();
        for &j in std::iter::once(&target).chain(&features) {
            if !seen.insert(headers[j].as_str()) {
                return Err(CgcError::InvalidInput(format!(
                    "column name {:?} is selected more than once or is not unique",
                    headers[j]
                )));
            }
        }

        let d = features.len();
        let mut data = Vec::with_capacity(records.len() * d);
        let mut labels = Vec::with_capacity(records.len());
        let mut dropped_rows = 0;
        let mut row_values = Vec::with_capacity(d);
        'rows: for (r, record) in records.iter().enumerate() {
            let row = r + 1;
            let label = record.get(target).unwrap_or("");
            if is_missing(label) {
                match self.missing {
                    MissingPolicy::DropRows => {
                        dropped_rows += 1;
                        continue;
                    }
                    MissingPolicy::Fail => {
                        return Err(CgcError::ParseError {
                            row,
                            column: headers[target].clone(),
                            value: label.to_owned(),
                        })
                    }
                }
            }
            row_values.clear();
            for &j in &features {
                let cell = record.get(j).unwrap_or("");
                let missing = is_missing(cell);
                match parse_finite(cell) {
                    Some(v) if !missing => row_values.push(v),
                    _ if missing && self.missing == MissingPolicy::DropRows => {
                        dropped_rows += 1;
                        continue 'rows;
                    }
                    _ => {
                        return Err(CgcError::ParseError {
                            row,
                            column: headers[j].clone(),
                            value: cell.to_owned(),
                        })
                    }
                }
            }
            data.extend_from_slice(&row_values);
            labels.push(label.to_owned());
        }
        if labels.is_empty() && dropped_rows > 0 {
            return Err(CgcError::EmptyAfterFiltering);
        }

        Ok(LoadedTable {
            data,
            d,
            labels,
            feature_names: features.iter().map(|&j| headers[j].clone()).collect(),
            target_name: headers[target].clone(),
            dropped_rows,
        })
    }
}

fn resolve(headers: &[String], column: &ColumnRef) -> Result<usize> {
    match column {
        ColumnRef::Index(i) if *i < headers.len() => Ok(*i),
        ColumnRef::Index(i) => Err(CgcError::InvalidInput(format!(
            "column index {i} out of range for {} columns",
            headers.len()
        ))),
        ColumnRef::Name(name) => {
            let mut hits = headers.iter().enumerate().filter(|(_, h)| *h == name).map(|(j, _)| j);
            match (hits.next(), hits.next()) {
                (Some(j), None) => Ok(j),
                (Some(_), Some(_)) => Err(CgcError::InvalidInput(format!("duplicate header name {name:?}"))),
                (None, _) => match name.parse::<usize>() {
                    Ok(i) => resolve(headers, &ColumnRef::Index(i)),
                    Err(_) => Err(CgcError::InvalidInput(format!("no column named {name:?}"))),
                },
            }
        }
    }
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan")
}

fn parse_finite(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn is_numeric_column(records: &[csv::StringRecord], j: usize) -> bool {
    let mut any = false;
    for record in records {
        let cell = record.get(j).unwrap_or("");
        if is_missing(cell) {
            continue;
        }
        if parse_finite(cell).is_none() {
            return false;
        }
        any = true;
    }
    any
}

/// Parsed table contents. Converted to a [`LabeledSample`] on demand so that
/// a table with fewer than two rows still loads.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedTable {
    data: Vec<f64>,
    d: usize,
    labels: Vec<String>,
    pub feature_names: Vec<String>,
    pub target_name: String,
    pub dropped_rows: usize,
}

impl LoadedTable {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sample(&self) -> Result<LabeledSample> {
        LabeledSample::new(self.data.clone(), self.d, self.labels.clone())
    }

    pub fn into_sample(self) -> Result<LabeledSample> {
        LabeledSample::new(self.data, self.d, self.labels)
    }
}

/// Writes `sample` as comma-separated text with a header, target column last.
/// Values use the shortest representation that parses back to the same float.
pub fn write_csv<W: Write>(
    writer: W,
    sample: &LabeledSample,
    feature_names: &[String],
    target_name: &str,
) -> Result<()> {
    if feature_names.len() != sample.d() {
        return Err(CgcError::InvalidInput(format!(
            "{} feature names for {} columns",
            feature_names.len(),
            sample.d()
        )));
    }
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(feature_names.iter().map(String::as_str).chain([target_name]))?;
    for (row, label) in sample.rows().zip(sample.labels()) {
        let mut record: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        record.push(label.clone());
        out.write_record(&record)?;
    }
    out.flush()?;
    Ok(())
}
