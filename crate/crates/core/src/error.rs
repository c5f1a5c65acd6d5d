//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("ill-conditioned linear system (condition estimate {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("eigensolver did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("sector dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("numerical domain error: {0}")]
    Numerical(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("fewer than {min} samples available ({got})")]
    InsufficientSamples { min: usize, got: usize },

    #[error("degenerate target: all sampled target amplitudes vanish")]
    DegenerateTarget,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
