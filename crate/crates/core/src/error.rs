use std::fmt;

use thiserror::Error;

/// A syntax error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        Self { offset, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("the type is finite or empty")]
    FiniteType,
    #[error("zero has no leading term")]
    ZeroOrdinal,
    #[error("points live in different ambient spaces")]
    AmbientMismatch,
    #[error("points are equal")]
    EqualPoints,
    #[error("{0} is not below the ambient length")]
    OutOfRange(String),
    #[error("no bijection with the naturals for an uncountable length")]
    Uncountable,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("window bound does not certify the minimum: {0}")]
    Window(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable tag used by the command line front end.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::FiniteType => "finite-type",
            Error::ZeroOrdinal => "zero-ordinal",
            Error::AmbientMismatch => "ambient-mismatch",
            Error::EqualPoints => "equal-points",
            Error::OutOfRange(_) => "out-of-range",
            Error::Uncountable => "uncountable",
            Error::InvalidSchedule(_) => "invalid-schedule",
            Error::InvalidFamily(_) => "invalid-family",
            Error::Window(_) => "window",
            Error::Precondition(_) => "precondition",
            Error::Unsupported(_) => "unsupported",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
