use thiserror::Error;

/// Errors produced by the inverse-system toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("not Gorenstein: the dual module needs {socle_dimension} generators (socle dimension {socle_dimension})")]
    NotGorenstein { socle_dimension: usize },

    #[error("z is a zero divisor modulo the ideal in degree {degree}")]
    BadZ { degree: u64 },

    #[error("admissibility failure at level {level}: {reason}")]
    Admissibility { level: usize, reason: String },

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Inconclusive results are reported separately from hard failures.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
