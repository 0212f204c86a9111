use thiserror::Error;

/// Errors raised by the numerical kernels and the measure computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid quantum numbers (n, l, m, Z).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The requested expectation value or integral does not converge.
    #[error("divergent: {0}")]
    Divergent(String),

    /// The requested leading term is not known in closed form.
    #[error("open problem: {0}")]
    OpenProblem(String),

    /// A closed form exists only for a restricted set of arguments.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A series or iteration hit its cap before meeting its tolerance.
    #[error("non-convergence: {0}")]
    NonConvergence(String),

    /// The integrand returned a non-finite value at an interior node.
    #[error("non-finite integrand sample {value} at x = {x:e}")]
    NonFiniteSample { x: f64, value: f64 },

    /// A log-space intermediate left the representable double range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A cross-check path is used outside its certified range.
    #[error("ill-conditioned: {0}")]
    Conditioning(String),
}

impl Error {
    /// Short machine-readable tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidState(_) => "invalid_state",
            Error::Divergent(_) => "divergent",
            Error::OpenProblem(_) => "open_problem",
            Error::Unsupported(_) => "unsupported",
            Error::NonConvergence(_) => "non_convergence",
            Error::NonFiniteSample { .. } => "non_finite_sample",
            Error::Overflow(_) => "overflow",
            Error::Conditioning(_) => "conditioning",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
