use std::io;

use thiserror::Error;

/// Errors produced by the matrix algebra, samplers, and experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("expected {expected} entries for an {n}x{n} matrix, got {actual}")]
    EntryCount {
        n: usize,
        expected: usize,
        actual: usize,
    },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix entry is not finite")]
    NonFinite,

    #[error("cannot normalize the zero matrix onto the unit sphere")]
    ZeroMatrix,

    #[error("distance exponent must be a finite positive real, got {0}")]
    InvalidAlpha(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{what} is only defined for the unit-sphere ensemble, got {ensemble}")]
    UnsupportedEnsemble {
        what: &'static str,
        ensemble: &'static str,
    },

    #[error("sample set is empty")]
    EmptySamples,

    #[error("allocation failed after {completed} of {requested} trials")]
    ResourceExhausted { completed: u64, requested: u64 },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad caller input rather than a runtime failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidDimension(_)
                | Error::InvalidAlpha(_)
                | Error::InvalidConfig(_)
                | Error::UnsupportedEnsemble { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
