use thiserror::Error;

/// Failures of exact series algebra. Any of these inside the kernel
/// pipeline means a derivation bug or an invalid specialization, not bad
/// user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("valuation error: numerator valuation {numerator} is below denominator valuation {denominator}")]
    Valuation { numerator: usize, denominator: usize },
    #[error("division by a series that vanishes to order {order}")]
    ZeroDivisor { order: usize },
    #[error("polynomial division left a remainder at z^{order}")]
    NonDivisible { order: usize },
    #[error("square root needs constant coefficient 1, found {found}")]
    Branch { found: String },
    #[error("cannot substitute a non-constant series of valuation 0 for {symbol}")]
    Truncation { symbol: &'static str },
    #[error("result is exact only to order {got}, {wanted} was requested")]
    Precision { got: usize, wanted: usize },
}

/// Size guard violations for exhaustive and quadratic computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: requested {requested}, limit is {limit}")]
pub struct LimitError {
    pub what: &'static str,
    pub requested: usize,
    pub limit: usize,
}

/// Anything that can stop a computation that both enumerates and does
/// series algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("{0}")]
    Unsupported(String),
}
