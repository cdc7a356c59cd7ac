use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by the zero polynomial")]
    ZeroDenominator,

    #[error("degree {needed} exceeds the degree budget {budget}")]
    DegreeBudget { needed: u128, budget: usize },

    #[error("repeated points: Möbius interpolation needs three distinct points on each side")]
    RepeatedPoints,

    #[error("exact projective point required")]
    NotExact,

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("{0}")]
    Domain(String),

    #[error("malformed boundary: d{dim}∘d{} ≠ 0 at cells ({row}, {col})", dim + 1)]
    MalformedBoundary { dim: usize, row: usize, col: usize },

    #[error("graph is budget-truncated; completion requires a complete graph")]
    TruncatedGraph,
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
