//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Violated operation precondition: mismatched lengths, malformed
    /// elements, subtraction of a larger ordinal, uncovered variables, ...
    #[error("domain error: {0}")]
    Domain(String),

    /// Syntax error with a source position (1-based line and column).
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A rational/equality domain expression outside the accepted shapes.
    #[error("shape error: {0}")]
    Shape(String),

    /// Input failed a semantic validation check (Petri reversibility,
    /// vector family consistency, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A configured resource bound was exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// An invariant the theory guarantees was observed broken. Must never
    /// fire; indicates a bug in this library.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable kind tag, used by the CLI error channel.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Parse { .. } => "parse",
            Error::Shape(_) => "shape",
            Error::Validation(_) => "validation",
            Error::Resource(_) => "resource",
            Error::Internal(_) => "internal",
        }
    }
}
