use thiserror::Error;

/// Errors returned by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An enumeration or exact engine was asked for a size beyond its guard.
    #[error("{what}: n = {n} exceeds the limit of {max}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("invalid integer partition: {0}")]
    InvalidIntegerPartition(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// The closed form does not apply to this input; use a generic engine.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("inadmissible Pitman-Ewens parameters (a = {a}, theta = {theta})")]
    InadmissibleParams { a: f64, theta: f64 },

    #[error("proposal probability underflowed to zero for a sampled partition")]
    ProbabilityUnderflow,

    /// Malformed matrix text or an unreadable file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::SizeLimit { what, n, max })
    } else {
        Ok(())
    }
}
