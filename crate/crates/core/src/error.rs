use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("not a complex: d^{} o d^{} is nonzero", .degree + 1, .degree)]
    NotAComplex { degree: i64 },

    #[error("modulus must be at least 1, got {0}")]
    ZeroModulus(i64),

    #[error("non-torsion complex: H^{degree} has free rank {rank}")]
    NonTorsion { degree: i64, rank: usize },

    #[error("polynomial is not monic")]
    NonMonic,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),

    #[error("could not certify irreducibility of a degree {0} polynomial")]
    IrreducibilityUnknown(usize),

    #[error("infinite quotient: the ideal is zero")]
    InfiniteQuotient,

    #[error("element has {got} coordinates, ring has degree {expected}")]
    ElementLength { expected: usize, got: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),

    #[error("invalid Hodge diamond: {0}")]
    InvalidDiamond(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
