use thiserror::Error;

/// Errors raised by oracles, solvers, parsers and benchmark tooling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The prox subproblem of a weakly convex term is not strongly convex for this step.
    #[error("prox step {mu} must be below 1/rho = {limit}")]
    ProxStepTooLarge { mu: f64, limit: f64 },

    /// Step-size backtracking never satisfied the sufficient decrease model condition.
    #[error("step-size backtracking exhausted after {0} reductions")]
    BacktrackExhausted(usize),

    #[error("degenerate conjugate gradient denominator")]
    DegenerateDenominator,

    #[error("zero displacement vector")]
    ZeroStep,

    #[error("solver requires a convex nonsmooth term (rho = {0})")]
    NotConvex(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
