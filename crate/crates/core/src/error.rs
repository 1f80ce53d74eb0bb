use thiserror::Error;

/// Errors raised by the distance solvers and their input types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: left series has d={left}, right series has d={right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("timestamps must be strictly increasing (sample {index}: {previous} then {current})")]
    NonIncreasingTime {
        index: usize,
        previous: f64,
        current: f64,
    },

    #[error("band state: {0}")]
    State(String),
}

pub type Result<T> = std::result::Result<T, Error>;
