use thiserror::Error;

use crate::coeff::CoeffError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: String, found: String },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("not an endomorphism: {from} -> {to}")]
    NotEndomorphism { from: usize, to: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("{what} = {size} exceeds the cap {limit}")]
    CapExceeded {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not an idempotent")]
    NotIdempotent,
    #[error("a field is required, got {0}")]
    FieldRequired(String),
    #[error("projector undefined: quantum integer [{0}] vanishes")]
    ProjectorUndefined(usize),
    #[error("idempotent splitting failed: {0}")]
    SplitFailure(String),
    #[error("ambiguous identification: {0}")]
    Ambiguous(String),
    #[error("unknown verification family '{0}'")]
    UnknownFamily(String),
    #[error("{path}: {msg}")]
    Json { path: String, msg: String },
}

impl Error {
    pub fn cap(what: impl Into<String>, size: usize, limit: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            size,
            limit,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
