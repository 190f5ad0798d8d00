use num_bigint::BigUint;
use thiserror::Error;

use crate::ingest::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("probability {num}/{den} lies outside [0, 1]")]
    OutOfRange { num: String, den: String },
    #[error("invalid draw: m = {m} must satisfy m <= n with n = {n} >= 1")]
    InvalidSpec { n: u32, m: u32 },
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("gap parameter k must be at least 1, got {0}")]
    InvalidK(u32),
    #[error("subset has a gap smaller than k = {k}")]
    GapTooSmall { k: u32 },
    #[error("value {value} exceeds the compressed range 1..={limit}")]
    ExpandOutOfRange { value: u32, limit: i64 },
    #[error("enumeration refused: {count} subsets exceed the budget of {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },
    #[error("draw size m = {0} leaves no pair to compare")]
    DegenerateDraw(u32),
    #[error("trials and workers must both be at least 1")]
    InvalidSimConfig,
    #[error("draw history is empty")]
    EmptyHistory,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
