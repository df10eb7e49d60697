use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point:?} lies outside the domain")]
    DomainViolation { point: Vec<f64> },

    #[error("operation requires dimension {expected}, got {got}")]
    UnsupportedDimension { expected: usize, got: usize },

    #[error("split point {point:?} is not strictly inside the polytope")]
    InvalidSplit { point: Vec<f64> },

    #[error("polytope is degenerate (volume {volume})")]
    Degenerate { volume: f64 },

    #[error("no cell of the division contains {point:?}")]
    PartitionCorruption { point: Vec<f64> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sampled point stayed on a cell boundary after {0} retries")]
    BoundaryRetries(usize),

    #[error("stopping rule not satisfied after {0} iterations")]
    IterationCap(usize),

    #[error("engine mismatch: {0}")]
    Mismatch(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
