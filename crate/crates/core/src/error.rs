use thiserror::Error;

/// Failures raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument outside the domain of {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("pole of {what} at {at}")]
    Pole { what: &'static str, at: String },

    #[error("non-finite input to {what}")]
    NonFinite { what: &'static str },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("{what} did not converge after {iterations} steps (last estimate {estimate:e}, tolerance {tolerance:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        estimate: f64,
        tolerance: f64,
    },

    #[error("root bracketing failed for {what}: {detail}")]
    Bracketing { what: &'static str, detail: String },

    #[error("spectrum is not discrete for alpha = {alpha}, beta = {beta}; a confining potential needs both positive")]
    Confinement { alpha: f64, beta: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Mehler-Fock integrand has not decayed at t_max = {t_max:e} (tail estimate {tail:e} exceeds {tolerance:e})")]
    TailNotDecaying { t_max: f64, tail: f64, tolerance: f64 },

    #[error("interpolation point {at} outside [{lo}, {hi}]")]
    OutOfRange { at: f64, lo: f64, hi: f64 },

    #[error("fit window holds {found} usable samples, at least {needed} required")]
    WindowTooSmall { found: usize, needed: usize },

    #[error("LAPACK {routine} returned info = {info}")]
    Lapack { routine: &'static str, info: i32 },

    #[error("eigenpair residual {residual:e} exceeds {tolerance:e} at index {index}")]
    Residual {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    /// True for failures caused by bad input rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::Pole { .. }
                | Error::NonFinite { .. }
                | Error::Confinement { .. }
                | Error::Precondition(_)
                | Error::OutOfRange { .. }
                | Error::WindowTooSmall { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
