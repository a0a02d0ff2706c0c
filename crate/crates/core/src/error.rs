use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("digit undefined at {0}")]
    UndefinedDigit(String),
    #[error("{point} lies outside the domain of {family}")]
    OutOfDomain { family: String, point: String },
    #[error("digit {digit} is not admissible for {family}")]
    InadmissibleDigit { family: String, digit: u64 },
    #[error("map evaluated at its pole")]
    Pole,
    #[error("orbit terminated after {0} digits")]
    OrbitTerminated(usize),
    #[error("quadrature failed to converge: estimated error {estimate:e} above tolerance {tol:e}")]
    NonConvergence { estimate: f64, tol: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("rejection budget exhausted after {0} draws")]
    RejectionBudget(usize),
    #[error("distortion ratio {ratio} exceeds bound {bound}")]
    BoundViolation { ratio: f64, bound: f64 },
    #[error("incompatible radicands {0} and {1}")]
    IncompatibleRadicands(u64, u64),
    #[error("digit does not fit in 64 bits")]
    DigitOverflow,
    #[error("empty interval")]
    EmptyInterval,
}

pub type Result<T> = std::result::Result<T, Error>;
