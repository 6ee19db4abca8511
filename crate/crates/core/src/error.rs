use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input that does not fit the declared alphabet or text format.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A breadth-first exploration or enumeration hit its node budget.
    #[error("resource budget of {budget} exceeded while {what}")]
    Budget { budget: usize, what: String },

    /// A validator rejected a construction (cone radius too small, inconsistent structure, ...).
    #[error("validation failed: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
