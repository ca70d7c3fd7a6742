use thiserror::Error;

/// Failures shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {from} does not divide {to}")]
    OrderMismatch { from: u32, to: u32 },
    #[error("cyclotomic order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: u64, cap: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("near-singular evaluation: {0}")]
    NearSingular(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("case mismatch: expected {expected}, found {found}")]
    CaseMismatch { expected: String, found: String },
    #[error("unsupported case {label}")]
    Unsupported { label: String, trace: Vec<String> },
    #[error("precision exhausted after {digits} digits: {what}")]
    PrecisionExhausted { digits: u32, what: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
