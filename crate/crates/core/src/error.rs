use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported item by item in a [`crate::construct::VerificationReport`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("{0} is not a prime")]
    NotPrime(BigUint),

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(BigUint, BigUint),

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("polynomial degree {degree} exceeds oracle bound {bound}")]
    OracleBound { degree: usize, bound: usize },

    #[error("polynomial is not primitive (content {0})")]
    NotPrimitive(BigUint),

    #[error("polynomial must be monic and non-constant: {0}")]
    NotMonicNonConstant(String),

    #[error("factor {index} must be primitive with positive leading coefficient")]
    BadFactor { index: usize },

    #[error("numerator constant {a} and denominator {b} are not coprime")]
    NotCoprime { a: BigUint, b: BigUint },

    #[error("not integer-valued: denominator {b} does not divide fixed divisor {fixed_divisor}")]
    NotMember { b: BigUint, fixed_divisor: BigUint },

    #[error("element is a unit; units have no factorizations")]
    Unit,

    #[error("factor {index} has no irreducibility certificate (linear or Eisenstein)")]
    UntrustedFactor { index: usize },

    #[error("enumeration bound exceeded: {factors} factors, bound {bound}")]
    EnumerationBound { factors: usize, bound: usize },

    #[error("fixed divisor of the factor product is {actual}, expected the prime {expected}")]
    NotPrimeFixedDivisor { expected: BigUint, actual: BigUint },

    #[error("cannot factor {0} by trial division within the configured limit")]
    Unfactorable(BigUint),

    #[error("a prime cofactor {cofactor} above the degree bound {degree} survived in the fixed divisor of a primitive polynomial")]
    FixedDivisorBound { cofactor: BigUint, degree: usize },

    #[error("invalid length request: {0}")]
    InvalidLengths(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coefficient {0} does not fit the expected range")]
    Overflow(BigInt),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
