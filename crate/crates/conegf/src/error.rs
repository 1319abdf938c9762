//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("binomial arguments must be nonnegative")]
    NegativeArgument,

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("denominator factor is not expandable as a power series (zero or negative exponent)")]
    NonExpandableDenominator,

    #[error("numerator monomial has a negative exponent; no power-series expansion exists")]
    NonExpandableNumerator,

    #[error("specialization maps a denominator factor to zero (pole created)")]
    PoleCreated,

    #[error("evaluation point lies on a pole")]
    PoleAtPoint,

    #[error("cone is not unimodular")]
    NotUnimodular,

    #[error("tangent cone is not unimodular")]
    NotUnimodularTangentCone,

    #[error("point is not a vertex of the polytope")]
    NotAVertex,

    #[error("variable {0} has no finite lower bound under the constraint system")]
    UnboundedBelow(usize),

    #[error("normalized volume is not an integer")]
    NonIntegerNormalizedVolume,

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn bad_params(msg: impl Into<String>) -> Self {
        Error::BadParams(msg.into())
    }
}
