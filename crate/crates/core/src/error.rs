use std::fmt;

use thiserror::Error;

use crate::scalar::Mode;

/// Location of a syntax problem in a text input (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("numeric mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("mixed numeric literals: {0}")]
    MixedLiterals(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },

    #[error("unknown generator `{name}` at {at}")]
    UnknownGenerator { name: String, at: Location },

    #[error("duplicate generator `{name}` at {at}")]
    DuplicateGenerator { name: String, at: Location },

    #[error("invalid scalar literal `{0}`")]
    InvalidLiteral(String),

    #[error("character is not admissible: relator {relator} evaluates to {value}")]
    Inadmissible { relator: usize, value: String },

    #[error("character value for generator {index} is not positive: {value}")]
    NonPositive { index: usize, value: String },

    #[error("cocycle fails relator {relator}: value {value}")]
    NotACocycle { relator: usize, value: String },

    #[error("matrix size {size} exceeds the eigenvalue cap of {cap}")]
    SizeExceeded { size: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            at: Location { line, column },
            message: message.into(),
        }
    }
}
