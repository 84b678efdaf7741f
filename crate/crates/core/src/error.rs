use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(String),

    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),

    #[error("expected {expected} basis, got {got}")]
    WrongBasis { expected: &'static str, got: &'static str },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: n = {n} > limit {limit}")]
    ResourceLimit { n: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
