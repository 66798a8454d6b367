use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series division left a nonzero remainder.
    #[error("inexact series division at exponent {exponent}")]
    InexactDivision { exponent: i64 },

    /// A certified evaluation could not reach the requested radius.
    #[error("cannot certify radius {target:e} within {max_bits} bits of working precision")]
    PrecisionUnreachable { target: f64, max_bits: u32 },

    /// The modular-equation system for Phi_l was singular or inconsistent.
    #[error("inconsistent system for l = {l}: {detail}")]
    InconsistentSystem { l: u64, detail: String },

    /// A polynomial file could not be parsed.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A table would exceed the configured memory budget.
    #[error("memory budget exceeded: {0}")]
    MemoryBudget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
