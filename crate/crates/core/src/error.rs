use thiserror::Error;

/// Errors raised by the algebra, oracle and CLI layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("q must be a unit: cannot specialize at q = 0")]
    ZeroSpecialization,
    #[error("rank mismatch: left operand lives in rank {left}, right operand in rank {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator T_{index} out of range for n = {n} (need 1 <= i <= n-1)")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("{0} is not a distinguished double coset representative")]
    NotDistinguished(String),
    #[error("dimension limit exceeded: {size} basis vectors > limit {limit}")]
    DimensionLimitExceeded { size: u128, limit: u128 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),
    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
