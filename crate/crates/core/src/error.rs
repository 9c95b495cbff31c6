use thiserror::Error;

/// Errors produced by the algebra, tower and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("generator name `{0}` is already in use")]
    NameClash(String),
    #[error("rule for `{name}` references a generator that is not yet defined")]
    ScopeViolation { name: String },
    #[error("logarithmic generator `{0}` has a zero argument")]
    LogOfZero(String),
    #[error("tower has no base generator with derivative 1")]
    MissingBase,
    #[error("tower already has a base generator")]
    DuplicateBase,
    #[error("invalid tower spec: {0}")]
    InvalidSpec(String),
    #[error("no annihilator found up to j = {j_max} (theoretical bound: p^k = {bound})")]
    BoundExceeded { j_max: u32, bound: u64 },
    #[error("minimal polynomial has non-constant coefficient at degree {degree}")]
    NonConstantMinPoly { degree: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no root of the characteristic polynomial within the extension bound")]
    NoRootWithinBound,
    #[error("no nonzero transfer operator exists")]
    NoTransferFound,
    #[error("transferred solution is zero (non-generic solution)")]
    GenericityFailure,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
