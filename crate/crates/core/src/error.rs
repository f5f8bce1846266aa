use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not homogeneous: {monomial} has degree {found}, expected {expected}")]
    NonHomogeneous {
        expected: u64,
        found: u64,
        monomial: String,
    },

    #[error("monomial {monomial} has {found} variables, expected {expected}")]
    ArityMismatch {
        expected: usize,
        found: usize,
        monomial: String,
    },

    #[error("monomial {monomial} has degree {found}, but the basis has degree {expected}")]
    DegreeMismatch {
        expected: u64,
        found: u64,
        monomial: String,
    },

    #[error("vector length {found} does not match expected length {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("exponent {0} exceeds the supported maximum 2^31 - 1")]
    ExponentTooLarge(u64),

    #[error("exponent overflow while multiplying monomials")]
    ExponentOverflow,

    #[error("the zero polynomial has no degree; hit membership is ill-posed")]
    ZeroPolynomial,

    #[error("degree-0 polynomials are never hit")]
    DegreeZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {what} would need {projected}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        projected: u128,
        cap: u128,
    },

    #[error("internal consistency check failed: {0}")]
    CertificateFailed(String),
}
