//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("entry is not rational: {0}")]
    NotRational(String),

    #[error("polynomial error: {0}")]
    Polynomial(String),

    #[error("not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("structure check failed [{check}]: {detail}")]
    Structure { check: String, detail: String },

    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("certificate rejected [{condition}]: {detail}")]
    Certificate { condition: String, detail: String },

    #[error("obstruction inapplicable: {0}")]
    ObstructionInapplicable(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn structure(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Structure { check: check.into(), detail: detail.into() }
    }

    pub fn certificate(condition: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Certificate { condition: condition.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
