use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime >= 3")]
    NotPrime(u64),
    #[error("denominator of {0} is divisible by {1}")]
    DenominatorDivisibleByP(String, u64),
    #[error("inconsistent samples: {0}")]
    InconsistentSamples(String),
    #[error("parity cases differ")]
    ParityCaseMismatch,
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("insufficient samples: need m_max >= {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("module compatibility violated: {0}")]
    ModuleCompatibilityViolated(String),
    #[error("not restrictable: {0}")]
    NotRestrictable(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("unknown example: {0}")]
    UnknownExample(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
