use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Γ argument {arg} lies within {tol:e} of a pole ({context})")]
    PoleProximity {
        arg: Complex64,
        tol: f64,
        context: String,
    },

    #[error("non-generic parameters: {0}")]
    NonGeneric(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    /// True for failures that originate in the numerics rather than in the
    /// caller's input (poles, small divisors, quadrature that did not settle).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::PoleProximity { .. } | Error::NonGeneric(_) | Error::NonConvergence(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Input(e.to_string())
    }
}
