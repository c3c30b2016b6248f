//! Error types shared across the crate.

use thiserror::Error;

/// Errors from constructing domain types or running operations on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet must have at least 2 symbols, got {0}")]
    AlphabetTooSmall(usize),

    #[error("probability at index {index} must be positive and finite, got {value}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("weight at index {index} must be positive and finite, got {value}")]
    InvalidWeight { index: usize, value: f64 },

    #[error("importance coefficient must be finite, got {0}")]
    NonFiniteCoefficient(f64),

    #[error("code alphabet size must be at least 2, got {0}")]
    BaseTooSmall(u32),

    #[error("code alphabet size {0} is not representable as single-character digits (max 10)")]
    BaseTooLarge(u32),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("codeword length at index {0} must be at least 1")]
    ZeroLength(usize),

    #[error("Kraft sum {sum} exceeds 1; no prefix code exists for these lengths")]
    KraftViolation { sum: f64 },

    #[error("symbol index {index} out of range for an alphabet of {alphabet} symbols")]
    SymbolOutOfRange { index: usize, alphabet: usize },

    #[error("block length must be at least 1")]
    ZeroBlockLength,

    #[error("product space {alphabet}^{n} exceeds the cap of {cap} entries")]
    ProductSpaceTooLarge { alphabet: usize, n: usize, cap: usize },

    #[error("joint table of {len} entries is not alphabet^{n} for any alphabet of 2 or more symbols")]
    MalformedJointTable { len: usize, n: usize },

    #[error("grid point {0} outside the open interval (0, 1)")]
    GridPointOutOfRange(f64),
}

/// Errors from parsing a digit stream back into symbols.
///
/// Offsets are byte offsets into the digit string. For a malformed
/// codeword the offset points at the start of the codeword that failed,
/// for an invalid digit at the digit itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("character {digit:?} at offset {offset} is not a base-{base} digit")]
    InvalidDigit { offset: usize, digit: char, base: u32 },

    #[error("no codeword matches the digits starting at offset {offset}")]
    UnrecognizedPrefix { offset: usize },

    #[error("input ends inside the codeword starting at offset {offset}")]
    IncompleteCodeword { offset: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
