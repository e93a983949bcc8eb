use thiserror::Error;

use crate::arith::{Integer, Rational};
use crate::classify::CaseTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("factorization bound {0} outside 2..=2^32-1")]
    InvalidBound(u64),
    #[error("exponent {0} too large")]
    ExponentTooLarge(i64),
    #[error("cofactor {residual} has no factor <= {bound} but exceeds {bound}^2")]
    FactorizationIncomplete { residual: Integer, bound: u64 },
    #[error("{0} is not prime")]
    NotPrime(Integer),

    #[error("singular map: ad - bc = 0")]
    SingularMap,
    #[error("{x} is the pole of the map")]
    PoleInput { x: Rational },
    #[error("c = 0: affine maps are not handled")]
    CIsZero,
    #[error("d = 0: admissibility bound needs d != 0")]
    DIsZero,
    #[error("discriminant {} not a rational square", compact(discriminant))]
    NonRationalFixedPoints { discriminant: Rational },
    #[error("determinant {det} not a rational square")]
    NonSquareDeterminant { det: Rational },
    #[error("degenerate points: cross-ratio denominator vanishes")]
    DegeneratePoints,
    #[error("determinant {det} != 1")]
    NotUnimodular { det: Rational },
    #[error("modular family {0} not in 1..=5")]
    InvalidFamily(u8),

    #[error("{xi} is not a fixed point of the map")]
    NotAFixedPoint { xi: Rational },
    #[error("map does not satisfy the constraints of case {0}")]
    CaseMismatch(CaseTag),
    #[error("fixed point is not indifferent at this place")]
    NotIndifferent,
    #[error("trajectory has {got} steps, window needs {needed}")]
    TooShort { needed: usize, got: usize },
    #[error("pole at place {0}")]
    PoleAtPlace(String),
    #[error("invalid adele: {0}")]
    InvalidAdele(String),
}

/// `5` rather than `5/1` in messages.
fn compact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}
