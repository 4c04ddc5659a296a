use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inadmissible Lie type: {0}")]
    InadmissibleType(String),
    #[error("cannot parse Lie type {0:?}")]
    ParseType(String),
    #[error("series has zero constant term, cannot invert")]
    ZeroConstantTerm,
    #[error("truncation bounds differ: {0:?} vs {1:?}")]
    BoundsMismatch((u32, u32), (u32, u32)),
    #[error("histogram does not match {expected}: {detail}")]
    HistogramMismatch { expected: String, detail: String },
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),
    #[error("bad cache file {path}: {detail}")]
    Cache { path: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the failure points at a mathematical inconsistency rather
    /// than bad input. The CLI maps these to exit code 2.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::Inconsistent(_) | Error::HistogramMismatch { .. } | Error::Cache { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
