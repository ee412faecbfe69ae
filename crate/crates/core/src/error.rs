use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("not expressible: {0}")]
    NotExpressible(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("fragment mismatch: {0}")]
    Fragment(String),
    #[error("operator sets generate different clones: {0}")]
    NotEquivalent(String),
    #[error("solver discrepancy: {0}")]
    Discrepancy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
