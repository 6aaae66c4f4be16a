use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be non-empty")]
    Empty,

    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },

    #[error("non-finite entry at {location}")]
    NonFinite { location: String },

    #[error("{what} is not Hermitian (defect {defect:e})")]
    NotHermitian { what: &'static str, defect: f64 },

    #[error("non-commuting K: commutator defect {defect:e} exceeds {tol:e}")]
    NotCommuting { defect: f64, tol: f64 },

    #[error("eta is not a metric for H: residual {residual:e} exceeds {tol:e}")]
    NotAMetric { residual: f64, tol: f64 },

    #[error("H is Hermitian; pass allow_hermitian to perturb it anyway")]
    HermitianHamiltonian,

    #[error("metric not positive (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no invertible shift found after {rungs} rungs")]
    ShiftLadderExhausted { rungs: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}
