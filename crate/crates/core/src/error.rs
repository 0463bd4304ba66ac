use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they are
/// reported as `false` by the verify functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("zero vector has no support")]
    ZeroSupport,
    #[error("support basis is linearly dependent")]
    DependentBasis,
    #[error("1 is not in the span of the support basis")]
    OneNotInSpan,
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("rejection sampling gave up after {0} iterations")]
    SamplingExhausted(usize),
    #[error("secret key does not match public key")]
    InvalidKeyPair,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown parameter set `{0}`")]
    UnknownParams(String),
    #[error("bad share set: {0}")]
    Shares(String),
    #[error("unknown security level `{0}` (expected I, III or V)")]
    UnknownLevel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
