//! Special functions of complex argument.
//!
//! All functions are pure. Errors are returned for poles, domain violations
//! and results that would overflow double precision; no NaN or Inf is returned
//! silently.

mod bessel;
mod gamma;
mod whittaker;

pub use bessel::{bessel_i, bessel_i_prime};
pub use gamma::{digamma, gamma, ln_gamma, rgamma, sin_pi, trigamma, BERNOULLI_2K};
pub use whittaker::{whittaker_m, whittaker_m_with_derivative, whittaker_w, whittaker_w_with_derivative};

/// Complex scalar used throughout the crate.
pub type ComplexScalar = num_complex::Complex64;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
