use thiserror::Error;

/// Errors raised by the group engine and the checks built on it.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid rational {0:?}: expected \"p/q\" with optional sign and q > 0")]
    InvalidRational(String),
    #[error("rewriting system is not locally confluent: overlap {overlap:?} yields {left:?} and {right:?}")]
    NonConfluent {
        overlap: String,
        left: String,
        right: String,
    },
    #[error("budget exceeded: {what} passed the cap of {cap}")]
    BudgetExceeded { what: &'static str, cap: usize },
    #[error("element outside the ball of radius {radius}: {context}")]
    OutOfBall { radius: usize, context: String },
    #[error("word {0:?} is not geodesic")]
    NotGeodesic(String),
    #[error("word {0:?} is already geodesic")]
    AlreadyGeodesic(String),
    #[error("word {0:?} does not represent the identity")]
    NotALoop(String),
    #[error("no shortening witness at ladder step {step} (k = {k})")]
    WitnessNotFound { step: usize, k: usize },
    #[error("requires k >= 1, got k = {0}")]
    ProvisoViolated(usize),
    #[error("certification scale {certified} is below the required {required}")]
    ScaleMismatch { certified: usize, required: usize },
    #[error("certificate is not Certified")]
    NotCertified,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("isoperimetric profile is not monotone at argument {0}")]
    ProfileNotMonotone(u64),
    #[error("isoperimetric table has no entry for argument {0}")]
    ProfileOutOfRange(u64),
    #[error("epsilon = {eps} must exceed k/2 for k = {k}")]
    EpsilonTooSmall { k: u64, eps: u64 },
    #[error("base type 2 count is negative: 2M < k(2k+2)C")]
    NegativeBase2,
}

pub type Result<T> = std::result::Result<T, Error>;
