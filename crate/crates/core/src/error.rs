use thiserror::Error;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the routine is defined.
    #[error("{0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {estimate:e} with error {error:e} after {intervals} intervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    /// A result does not fit in native floating point.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The real Schur iteration did not converge.
    #[error("eigensolver did not converge for a {0}x{0} matrix")]
    Eigensolver(usize),

    /// A stationary point was found where the phase must be monotone.
    #[error("phase derivative changes sign or vanishes at u = {0}")]
    CriticalPoint(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(format!($($arg)*))
    };
}
pub(crate) use domain;
