//! Error and result types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// I/O failure while reading or writing files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed or inconsistent input data (CSV cells, dates, shapes,
    /// violated preconditions on sample sizes).
    #[error("data error: {0}")]
    Data(String),

    /// Numerical failure: singular or non-positive-definite matrices,
    /// zero-variance series, rank-deficient regressors.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Invalid configuration (pipeline config files, CLI parameters).
    #[error("config error: {0}")]
    Config(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Data(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Data(format!("json: {e}"))
    }
}

impl Error {
    /// Exit code for the CLI: 1 usage/config, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Io(_) | Error::Data(_) => 2,
            Error::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn data_err(msg: impl Into<String>) -> Error {
    Error::Data(msg.into())
}

pub(crate) fn num_err(msg: impl Into<String>) -> Error {
    Error::Numerical(msg.into())
}
