use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An exhaustive computation would exceed the configured budget.
    #[error("budget exceeded: {needed} units requested, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    /// A structural property that the construction guarantees did not hold.
    #[error("construction invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
