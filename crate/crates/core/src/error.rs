use thiserror::Error as ThisError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    #[error("{function}: pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: {message}")]
    Domain { function: &'static str, message: String },

    #[error("{function}: result overflows double precision (log-magnitude {log_magnitude:.3})")]
    Overflow { function: &'static str, log_magnitude: f64 },

    #[error("{module}: tail estimate {estimate:e} exceeds tolerance {tol:e} after {terms} terms")]
    Convergence { module: &'static str, tol: f64, estimate: f64, terms: usize },

    #[error("{module}: no sign change in bracket [{lo:e}, {hi:e}] (smallest |residual| {residual:e})")]
    NoRoot { module: &'static str, lo: f64, hi: f64, residual: f64 },

    #[error("{module}: quadrature error estimate {estimate:e} exceeds tolerance {tol:e}")]
    Quadrature { module: &'static str, tol: f64, estimate: f64 },

    #[error("{module}: fixed point not reached after {iterations} iterations (residual {residual:e}, tolerance {tol:e})")]
    NoConvergence { module: &'static str, iterations: usize, residual: f64, tol: f64 },

    #[error("{module}: no subcritical fixed point, iterate reached a = {a} (limit {limit})")]
    SupercriticalExcursion { module: &'static str, a: f64, limit: f64 },

    #[error("{module}: step size underflow at t = {t}")]
    StepFailure { module: &'static str, t: f64 },
}

impl Error {
    /// True for failures of a numerical method, false for invalid input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain { .. } | Error::Pole { .. })
    }

    pub(crate) fn domain(function: &'static str, message: impl Into<String>) -> Self {
        Error::Domain { function, message: message.into() }
    }
}
