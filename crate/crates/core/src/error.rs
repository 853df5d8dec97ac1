use thiserror::Error;

/// Errors raised by the algebra engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring context: {0}")]
    InvalidContext(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },

    #[error("invalid exponent at position {position}: {message}")]
    BadExponent { position: usize, message: String },

    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomials belong to different rings")]
    ContextMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("homology not stabilized at pole cap {cap} (transition ranks {ranks:?}); raise the pole cap")]
    NotStabilized { cap: u32, ranks: Vec<usize> },

    #[error("automatic pole cap unavailable: {0}")]
    AutoCapUnavailable(String),

    #[error("degree cap required: Jacobian ring is not Artinian")]
    DegreeCapRequired,

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
