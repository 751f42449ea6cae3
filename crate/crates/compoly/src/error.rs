//! Error type shared across the crate.

use std::fmt;

/// Errors raised by construction and arithmetic operations.
///
/// Verification routines do not use this type: a failed identity check is
/// reported as data (see [`crate::report`]), not as an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Exact polynomial division left a nonzero remainder (or the divisor
    /// was zero). Signals a computation bug or invalid input.
    NotDivisible,
    /// The operation needs a composition with at least two parts.
    TooShort { len: usize },
    /// The given blocks do not form a set partition of {1, ..., n}.
    NotAPartition(String),
    /// A bijection input violates the preconditions of the map.
    InvalidElement(String),
    /// Coefficient lookup with a composition of the wrong weight.
    DegreeMismatch { expected: usize, found: usize },
    /// A reduced polynomial has a non-integer coefficient, violating the
    /// integrality guarantee. Hard assertion failure.
    NonIntegerCoefficient(String),
    /// A reduced polynomial has a negative coefficient, violating the
    /// nonnegativity guarantee. Hard assertion failure.
    NegativeCoefficient(String),
    /// Composition parts must be positive and the part list nonempty.
    InvalidComposition(String),
    /// Text input could not be parsed; `position` is a byte offset.
    Parse { position: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotDivisible => write!(f, "polynomial division is not exact"),
            Error::TooShort { len } => {
                write!(f, "composition has {len} part(s), need at least 2")
            }
            Error::NotAPartition(msg) => write!(f, "not a set partition: {msg}"),
            Error::InvalidElement(msg) => write!(f, "invalid element: {msg}"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected weight {expected}, got {found}")
            }
            Error::NonIntegerCoefficient(msg) => {
                write!(f, "non-integer coefficient in reduced polynomial: {msg}")
            }
            Error::NegativeCoefficient(msg) => {
                write!(f, "negative coefficient in reduced polynomial: {msg}")
            }
            Error::InvalidComposition(msg) => write!(f, "invalid composition: {msg}"),
            Error::Parse { position, message } => {
                write!(f, "parse error at position {position}: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
