use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("p-digit carry at position {position}")]
    Carry { position: usize },

    #[error("height {actual} is smaller than the requested {requested}")]
    HeightTooSmall { actual: u64, requested: u64 },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("weight system too short: need r_{needed}, have {have} entries")]
    WeightsTooShort { needed: usize, have: usize },

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
