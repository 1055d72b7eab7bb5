use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// The table (full mode) or two-layer slab (rolling mode) needs more
    /// cells than the configured budget allows.
    #[error("cell budget exceeded: {requested} cells requested, budget is {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },

    #[error("table extents overflow the addressable cell count")]
    Overflow,

    #[error("oracle guard exceeded: shortest Y sequence has {len} symbols, limit is {limit}")]
    OracleGuard { len: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
