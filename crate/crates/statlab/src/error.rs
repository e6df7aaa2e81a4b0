use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by corpus construction and the statistical indicators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("at least {min} draws required (got {got})")]
    TooFewDraws { min: usize, got: usize },
    #[error("corpus source is empty: {0}")]
    EmptySource(String),
    #[error("reading corpus file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("histogram lengths differ ({left} vs {right})")]
    HistogramLengthMismatch { left: usize, right: usize },
    #[error("observed histogram sums to {got}, expected the draw count {expected}")]
    HistogramSumMismatch { expected: u64, got: u64 },
    #[error("observed mass at hit count {hits} where the reference probability is zero")]
    DegenerateReference { hits: usize },
    #[error("building worker pool: {0}")]
    WorkerPool(String),
    #[error(transparent)]
    Core(#[from] qhfm_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
