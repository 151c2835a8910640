use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("substitution t -> -t is ambiguous for half-integer exponents")]
    HalfIntegerExponent,
    #[error("degree must be non-negative, got {0}")]
    NegativeDegree(i64),
    #[error("torus link index must be positive, got {0}")]
    NonPositiveTorusIndex(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pretzel link must have at least one twist region")]
    EmptyPretzel,
    #[error("{0} has {1} components, expected a knot")]
    NotAKnot(String, usize),
    #[error("diagram {0} has no crossings")]
    NoCrossings(String),
    #[error("invalid rational tangle {0}/{1}")]
    InvalidTangle(i64, i64),
    #[error("no rewrite rule for leaf {0}")]
    UnsupportedLeaf(String),
    #[error("family {0} has no closed form")]
    NoClosedForm(String),
    #[error("polynomial is not symmetric: {0}")]
    Asymmetric(String),
    #[error("parameters outside the family: {0}")]
    OutsideFamily(String),
    #[error("slope {0}/{1} is not a valid reduced slope")]
    InvalidSlope(i64, i64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("stage received a tag it does not handle: {0}")]
    UnexpectedTag(String),
    #[error("malformed Alexander matrix: {0}")]
    Matrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;
