use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `x` shares a factor with `n`; `gcd` is that (lucky) factor.
    #[error("{x} is not coprime to {n} (gcd = {gcd})")]
    NotCoprime { x: u64, n: u64, gcd: u64 },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
