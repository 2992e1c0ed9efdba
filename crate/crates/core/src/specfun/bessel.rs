use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::numerics::Sum;
use crate::{Error, Result};

const EXP_LIMIT: f64 = 709.0;

fn validate(function: &'static str, order: f64, x: f64) -> Result<()> {
    if !(order >= 0.0) || !order.is_finite() {
        return Err(Error::domain(function, format!("order = {order} must be non-negative")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(function, format!("x = {x} must be non-negative")));
    }
    Ok(())
}

/// Modified Bessel function I_nu(x) from its power series (all terms positive).
pub fn bessel_i(order: f64, x: f64) -> Result<f64> {
    validate("bessel_I", order, x)?;
    if x == 0.0 {
        return Ok(if order == 0.0 { 1.0 } else { 0.0 });
    }
    let log_lead = order * (0.5 * x).ln() - ln_gamma(Complex64::new(order + 1.0, 0.0))?.re;
    let q = 0.25 * x * x;
    let mut s = Sum::new();
    let mut t = 1.0;
    let mut k = 0.0;
    loop {
        s.add(t);
        k += 1.0;
        t *= q / (k * (k + order));
        if !s.value().is_finite() {
            return Err(Error::Overflow { function: "bessel_I", log_magnitude: f64::INFINITY });
        }
        if t <= 1e-17 * s.value() && k > 0.5 * x {
            break;
        }
    }
    let log_mag = log_lead + s.value().ln();
    if log_mag > EXP_LIMIT {
        return Err(Error::Overflow { function: "bessel_I", log_magnitude: log_mag });
    }
    Ok(log_mag.exp())
}

/// Derivative I'_nu(x) = I_{nu+1}(x) + (nu/x) I_nu(x).
pub fn bessel_i_prime(order: f64, x: f64) -> Result<f64> {
    validate("bessel_I_prime", order, x)?;
    if x == 0.0 {
        return if order == 0.0 || order > 1.0 {
            Ok(0.0)
        } else if order == 1.0 {
            Ok(0.5)
        } else {
            Err(Error::domain("bessel_I_prime", "derivative unbounded at x = 0 for 0 < order < 1"))
        };
    }
    if order >= 1.0 {
        Ok(0.5 * (bessel_i(order - 1.0, x)? + bessel_i(order + 1.0, x)?))
    } else {
        Ok(bessel_i(order + 1.0, x)? + order / x * bessel_i(order, x)?)
    }
}
