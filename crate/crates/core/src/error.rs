//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A dimension or count that must be positive was zero, negative, or non-finite.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// A scenario or report file failed to parse or violated a field invariant.
    #[error("malformed file ({field}): {message}")]
    MalformedFile { field: String, message: String },

    /// One or more configuration invariants are violated; all violations are listed.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Two placements of different lengths were combined.
    #[error("placement length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A router or client coordinate falls outside the scenario area.
    #[error("point ({x}, {y}) outside area {width} x {height}")]
    OutOfArea { x: f64, y: f64, width: f64, height: f64 },

    #[error("unknown algorithm: {0}")]
    UnknownAlgorithm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn malformed(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::MalformedFile { field: field.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
