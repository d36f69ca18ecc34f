use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("{value} is outside the supported range 1..={limit}")]
    Range { value: u64, limit: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A hypothesis of the identity fails at the named prime.
    #[error("precondition violated at p = {prime}: {reason}")]
    Precondition { prime: u64, reason: String },

    #[error("type error: {0}")]
    Type(String),

    #[error("accumulator overflow in {0}")]
    Overflow(&'static str),

    /// Indicates a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
