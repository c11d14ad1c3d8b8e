use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("enumeration cap of {cap} exceeded (estimated {estimate})")]
    CapExceeded { cap: u128, estimate: u128 },

    #[error("work budget of {budget} exceeded (needs {needed})")]
    BudgetExceeded { budget: u64, needed: u64 },

    #[error("position {pos} out of range for text of length {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
