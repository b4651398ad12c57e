use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive")]
    ZeroValue,
    #[error("{n} is not prime")]
    NotPrime { n: u64 },
    #[error("{n} is not a prime power")]
    NotPrimePower { n: u64 },
    #[error("{a} is not coprime to the modulus {m}")]
    NotCoprime { a: u64, m: u64 },
    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },
    #[error("exponent {ell} equals the group order; a proper divisor of q-1 is required")]
    DegenerateExponent { ell: u64 },
    #[error("element {0} is not a generator of the multiplicative group")]
    NotAGenerator(String),
    #[error("modulus polynomial is reducible; a factor is {factor}")]
    ReducibleModulus { factor: String },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("field of size {q} exceeds the table limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("value out of domain: {0}")]
    Domain(String),
    #[error("numeric overflow: {0}")]
    Overflow(String),
    #[error("rounding tolerance violated: {0}")]
    Tolerance(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
