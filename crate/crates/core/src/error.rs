use thiserror::Error;

pub type Result<T, E = CgcError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CgcError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("insufficient data: need at least {required} observations, got {actual}")]
    InsufficientData { required: usize, actual: usize },

    #[error("class {label:?} has {size} observations, at least {required} required")]
    InsufficientClassSize {
        label: String,
        size: usize,
        required: usize,
    },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("{rows} rows exceed the distance cache limit of {cap} rows")]
    ResourceLimit { rows: usize, cap: usize },

    #[error("cannot parse {value:?} at row {row}, column {column:?}")]
    ParseError { row: usize, column: String, value: String },

    #[error("no rows left after dropping rows with missing values")]
    EmptyAfterFiltering,

    #[error("malformed table: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CgcError {
    /// Stable variant name, used by front ends to report failures.
    pub fn name(&self) -> &'static str {
        match self {
            CgcError::InvalidInput(_) => "InvalidInput",
            CgcError::InsufficientData { .. } => "InsufficientData",
            CgcError::InsufficientClassSize { .. } => "InsufficientClassSize",
            CgcError::DegenerateSample(_) => "DegenerateSample",
            CgcError::ResourceLimit { .. } => "ResourceLimit",
            CgcError::ParseError { .. } => "ParseError",
            CgcError::EmptyAfterFiltering => "EmptyAfterFiltering",
            CgcError::Csv(_) => "ParseError",
            CgcError::Io(_) => "IoError",
        }
    }
}
