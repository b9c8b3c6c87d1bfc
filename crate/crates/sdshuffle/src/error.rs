use thiserror::Error;

/// Errors raised by the masking, metric, and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A tuning or method parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input data violates a precondition (shape, finiteness, emptiness).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two matrices that must share a shape do not.
    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    /// A numerical routine failed (e.g. a covariance matrix that stays
    /// non-positive-definite after regularization).
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
