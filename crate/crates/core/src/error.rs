use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the construction and certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a valid input to {0}")]
    ZeroInput(&'static str),

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(BigInt),

    #[error("discriminant of a constant polynomial is undefined")]
    ConstantPolynomial,

    #[error("polynomial has a repeated root (discriminant is zero)")]
    ZeroDiscriminant,

    #[error("polynomial is reducible over Q")]
    Reducible,

    #[error("polynomial is not a monic integer quartic: {0}")]
    NotIntegralQuartic(String),

    #[error("r^2 - 4s = {0} is a perfect square; the biquadratic criterion does not apply")]
    DlwPrecondition(BigInt),

    #[error("|z| must be at least 2 for this construction, got {0}")]
    SmallZ(BigInt),

    #[error("parameter tuple is malformed: {0}")]
    MalformedParams(String),

    #[error("parameter t is not set")]
    MissingT,

    #[error("{what} = {value} is not squarefree ({factor}^2 divides it)")]
    NotSquarefree {
        what: &'static str,
        value: BigInt,
        factor: BigInt,
    },

    #[error("canonical generator data violates its invariants: {0}")]
    BadCanonical(String),

    #[error("psi is not real for these parameters")]
    NonRealPsi,

    #[error("the first equation of the system fails for these parameters")]
    SystemFails,

    #[error("theta is not an algebraic integer for t = {0}")]
    NotHasseIntegral(BigInt),

    #[error("P(X) does not have integer coefficients")]
    NonIntegralPolynomial,

    #[error("x must be odd and at least 3, got {0}")]
    BadOddX(BigInt),

    #[error(
        "x = {0} is 2 mod 4: y is even and 4 divides b(x^2-y^2)+2axy, so it never equals 2 or -2"
    )]
    XTwoModFour(BigInt),

    #[error("x must be a multiple of 4, got {0}")]
    BadEvenX(BigInt),

    #[error("unknown family selector {0}")]
    BadFamily(u32),

    #[error("failed to parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
