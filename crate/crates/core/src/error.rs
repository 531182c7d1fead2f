use thiserror::Error;

use crate::quadratic::RealQuadratic;

/// Everything that can go wrong in the library.
///
/// The `PropositionViolation` and `ClosureViolation` variants are not input
/// errors: they report that a structural claim about ambiguous numbers did
/// not hold for a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("element has a nonzero i-component and is not of the form (a+b√3)/c")]
    NotRealQuadratic,

    #[error("d = (a²-3b²)/c is not an integer for {0}")]
    NonIntegralD(RealQuadratic),

    #[error("input is zero")]
    ZeroInput,

    #[error("d-value is zero for {0}")]
    ZeroD(RealQuadratic),

    #[error("integer overflow while computing with {0}")]
    Overflow(String),

    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),

    #[error("{0} is not ambiguous")]
    NotAmbiguousInput(RealQuadratic),

    #[error("C/C² ambiguity claim fails at {witness}: C gives {c_image}, C² gives {c2_image}")]
    PropositionViolation {
        witness: RealQuadratic,
        c_image: RealQuadratic,
        c2_image: RealQuadratic,
    },

    #[error("{label} image {image} of {vertex} is not a vertex")]
    ClosureViolation {
        label: &'static str,
        vertex: RealQuadratic,
        image: RealQuadratic,
    },

    #[error("orbit exploration exceeded {0} vertices")]
    LimitExceeded(usize),

    #[error("matrix determinant is not 1")]
    DeterminantNotOne,

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
