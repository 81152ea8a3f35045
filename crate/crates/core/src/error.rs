use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A term without a factor of `l` was found while dividing by `l`.
    #[error("polynomial has a term free of l and is not divisible by l")]
    NotDivisible,

    #[error("expected a positive integer r, got r = {0}")]
    InvalidOrder(u32),

    #[error("the classical limit is only defined for l-free inputs")]
    LambdaContaminated,

    /// The alternating sum of the n-factor rule was not divisible by `l^r`.
    /// Never caused by user input.
    #[error("internal error: alternating sum is not divisible by l^{0}")]
    InternalDivisibilityFailure(u32),

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("factor list must contain at least one polynomial")]
    EmptyFactorList,

    #[error("lambda must be nonzero")]
    ZeroLambda,

    #[error("{function} is singular at x = {at}, inside the sampled stencil")]
    SingularityInWindow { function: String, at: f64 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unknown function {0:?}")]
    UnknownFunction(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
