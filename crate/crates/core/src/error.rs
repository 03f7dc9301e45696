use thiserror::Error;

/// Errors surfaced by the library. Everything is a precondition or input
/// problem; the numeric kernels themselves are total on valid inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("weight sequence has a zero entry at index {index}")]
    ZeroWeight { index: usize },

    #[error("weight sequence too short: need {needed}, have {got}")]
    WeightTooShort { needed: usize, got: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("truncation too small: need at least {needed}, have {got}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no characterization implemented for the class ({from} : {to})")]
    NoCharacterization { from: String, to: String },
}

pub type Result<T> = std::result::Result<T, Error>;
