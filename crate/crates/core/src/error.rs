use thiserror::Error;

/// Errors raised by the exact-arithmetic routines.
///
/// Variants split into two families: malformed input (bad syntax, wrong
/// lengths, mismatched fields) and mathematical precondition failures
/// (a modulus that is not square-free, a non-unit passed where a unit is
/// required). [`Error::is_precondition`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("both gcd arguments are zero")]
    GcdOfZeros,
    #[error("constant polynomial has no irreducibility witness")]
    ConstantPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("expected {expected} elements, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("zero element has no denominator clearing")]
    ZeroElement,
    #[error("m = {0} is excluded (must be a square-free integer other than 0 and 1)")]
    DegenerateRadicand(i64),
    #[error("m = {0} is not square-free")]
    NotSquareFree(i64),
    #[error("square-freeness of m = {0} cannot be verified by trial division up to {1}")]
    SquareFreeUnverified(i64, u64),
    #[error("integer {0} cannot be factored by trial division up to {1}")]
    Unfactorable(String, u64),
    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,
    #[error("the unit ideal has no prime factorization")]
    UnitIdeal,
    #[error("ideal does not belong to Q(sqrt({0}))")]
    IdealFieldMismatch(i64),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("imaginary quadratic field Q(sqrt({0})) has no fundamental unit")]
    NoFundamentalUnit(i64),
    #[error("continued fraction period exceeds the cap of {0} steps")]
    PeriodExceeded(usize),
    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: String, n: String },
    #[error("invalid modulus {0}")]
    InvalidModulus(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of a mathematical precondition as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotSquareFree(_)
                | Error::SquareFreeUnverified(..)
                | Error::Unfactorable(..)
                | Error::NoFundamentalUnit(_)
                | Error::PeriodExceeded(_)
                | Error::NotUnit(_)
                | Error::NotPrime(_)
                | Error::NotCoprime { .. }
                | Error::DegenerateRadicand(_)
                | Error::NotMonic
                | Error::ZeroIdeal
                | Error::UnitIdeal
                | Error::ZeroDivisor
                | Error::ZeroInverse
                | Error::ZeroElement
                | Error::ZeroPolynomial
                | Error::GcdOfZeros
                | Error::ConstantPolynomial
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
