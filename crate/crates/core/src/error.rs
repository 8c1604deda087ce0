use thiserror::Error;

/// Errors raised by the spreadlab library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element {elt} is not in the subfield of degree {degree}")]
    NotInSubfield { elt: u32, degree: u32 },
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic two")]
    OddCharacteristic,
    #[error("field contexts differ")]
    ContextMismatch,
    #[error("not a Dembowski-Ostrom polynomial: {0}")]
    NotDembowskiOstrom(String),
    #[error("function is not planar")]
    NotPlanar,
    #[error("multiplication has zero divisors")]
    ZeroDivisors,
    #[error("semifield has no identity; normalize first")]
    NoIdentity,
    #[error("parametrization is not injective (rank {rank} < {expected})")]
    NotInjective { rank: usize, expected: usize },
    #[error("component dimensions differ")]
    DimensionMismatch,
    #[error("spread has not been verified")]
    UnverifiedSpread,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("correctness alarm: {0}")]
    Inconsistent(String),
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
