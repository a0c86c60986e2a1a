use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in Q(t)")]
    DivisionByZero,

    #[error("pole at t = {0}")]
    Pole(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration too large: {what} needs {needed} candidates, bound is {bound}")]
    Infeasible { what: String, needed: u128, bound: u128 },

    #[error("singular linear system in stage {0}")]
    Singular(String),

    #[error("internal defect: {0}")]
    Defect(String),

    #[error("no cutoff A <= {a_max} certifies {digits} digits (best achieved: {best})")]
    PlanFailed { digits: u32, a_max: u64, best: u32 },

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
