use thiserror::Error;

/// Errors produced by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("closure or enumeration cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: String, cap: usize },

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("invalid component action: {0}")]
    InvalidComponentAction(String),

    #[error("seed matrix is not symmetric positive definite")]
    SeedNotPD,

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("invalid homomorphism data: {0}")]
    InvalidHom(String),

    #[error("label set is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invariant broken: {0}")]
    InvariantBroken(String),

    #[error("invalid linearized action: {0}")]
    InvalidAction(String),

    #[error("identity component is not a torus; per-point classification needs a torus neutral component")]
    NonAbelianIdentityComponent,

    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse error classes, one per CLI exit code / FFI status code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    InvalidInput,
    CapExceeded,
    Unsupported,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::CapExceeded { .. } => ErrorClass::CapExceeded,
            Error::NonAbelianIdentityComponent => ErrorClass::Unsupported,
            _ => ErrorClass::InvalidInput,
        }
    }

    pub(crate) fn cap(what: impl Into<String>, cap: usize) -> Self {
        Error::CapExceeded { what: what.into(), cap }
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
