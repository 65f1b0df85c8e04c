use thiserror::Error;

/// Errors raised by the library.
///
/// `NonIntegral`, `Negative` and `Mismatch` are bug sentinels: they can only
/// fire if an enclosure or an identity that is guaranteed by the underlying
/// theorems fails, and they are never papered over by rounding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("partition {0} is not in the alcove Γ_{{{1},{2}}}")]
    NotInAlcove(String, u32, u32),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("precision exhausted: no integer isolated at {max_bits} bits")]
    PrecisionExhausted { max_bits: u32 },

    #[error("certified enclosure excludes every integer: {0}")]
    NonIntegral(String),

    #[error("refined dimension is negative: {0}")]
    Negative(String),

    #[error("modulus mismatch: expected {expected}, got {actual}")]
    ModulusMismatch { expected: u32, actual: u32 },

    #[error("genus mismatch: expected {expected}, got {actual}")]
    GenusMismatch { expected: usize, actual: usize },

    #[error("step power {step} does not divide rank {rank}")]
    StepDoesNotDivide { step: u32, rank: u32 },

    #[error("odd orbit with odd stabilizer order {0}: ε is undefined")]
    OddStabilizer(u32),

    #[error("identity check failed: {0}")]
    Mismatch(String),

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
