//! Crate-wide error type.

use thiserror::Error;

/// Errors produced anywhere in the pipeline, from CSV ingestion through
/// posterior sampling and simulation.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of an operation
    /// (nonpositive scale parameter, constant correlation input, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Cholesky factorization hit a nonpositive pivot.
    #[error("matrix is not positive definite: pivot {pivot} is nonpositive")]
    NotPositiveDefinite { pivot: usize },

    /// A matrix expected to be symmetric was not, within tolerance.
    #[error("matrix is not symmetric within tolerance: |m[{i}][{j}] - m[{j}][{i}]| = {delta:e}")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    /// The regression design matrix is numerically rank deficient.
    #[error("rank-deficient design: {0}")]
    RankDeficient(String),

    /// A statistical test received degenerate input.
    #[error("test error: {0}")]
    Test(String),

    /// Fitting a single state failed.
    #[error("fit error for state {state}: {source}")]
    Fit {
        state: String,
        #[source]
        source: Box<Error>,
    },

    /// One or more per-state fits failed.
    #[error("fit failed for {} state(s): {}", failures.len(), summarize(failures))]
    AggregateFit { failures: Vec<(String, String)> },

    /// The residual variance estimate is zero, so the conjugate posterior
    /// collapses to a point mass; callers may treat the point estimates as exact.
    #[error("degenerate posterior for state {state}: residual variance estimate is zero")]
    DegeneratePosterior { state: String },

    /// Malformed or inconsistent input data.
    #[error("data error: {0}")]
    Data(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Underlying CSV parse failure.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

fn summarize(failures: &[(String, String)]) -> String {
    failures
        .iter()
        .map(|(state, msg)| format!("{state}: {msg}"))
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Data-shaped errors (bad files, bad rows, bad arguments) as opposed to
    /// computation failures. The CLI maps these to exit code 2.
    pub fn is_data_error(&self) -> bool {
        matches!(self, Error::Data(_) | Error::Io(_) | Error::Csv(_))
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn row(file: &str, row: usize, msg: impl std::fmt::Display) -> Self {
        Error::Data(format!("{file} row {row}: {msg}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
