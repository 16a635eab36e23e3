use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse `{0}` as a slope p/q or a continued fraction [a1,...,ar]")]
    Parse(String),
    #[error("slope {p}/{q} is not in lowest terms")]
    NotCoprime { p: u64, q: u64 },
    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),
    #[error("multinomial parts sum to {got}, expected {expected}")]
    MultinomialParts { expected: usize, got: usize },
    #[error("denominator must be a nonzero polynomial in q alone")]
    BadDenominator,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("{kind} twist is not defined on {boundary} tangles here")]
    IllegalTwist { kind: String, boundary: String },
    #[error("{direction} closure is not defined for {boundary} tangles")]
    IllegalClosure { direction: String, boundary: String },
    #[error("pipeline hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("malformed Pochhammer symbol: {0}")]
    Pochhammer(String),
    #[error("off-diagonal entry ({i},{j}) has odd sum {sum}; quiver matrix is not integral")]
    Symmetrization { i: usize, j: usize, sum: i64 },
    #[error("slope {p}/{q} is a two-component link; this operation needs a knot")]
    NotAKnot { p: u64, q: u64 },
    #[error("data is already in the symmetric convention")]
    AlreadyInverted,
}

pub type Result<T> = std::result::Result<T, Error>;
