//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("scalar ring mismatch")]
    RingMismatch,
    #[error("torus context mismatch")]
    ContextMismatch,
    #[error("exponent length {got} does not match torus rank {want}")]
    RankMismatch { got: usize, want: usize },
    #[error("not divisible in the quantum torus")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no compatible pair: {0}")]
    NoCompatiblePair(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("cap exceeded in {what}: needed {needed}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("quiver has an oriented cycle")]
    CycleDetected,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("vertex {0} is not a source")]
    NotSource(usize),
    #[error("module is not injective")]
    NotInjective,
    #[error("matrix shape mismatch")]
    ShapeMismatch,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Cap violations are reported per instance by the verification suites
    /// instead of aborting a whole run.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
