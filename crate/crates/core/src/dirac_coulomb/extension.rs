use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Channel, CoulombSystem};
use crate::specfun::{gamma, rgamma};
use crate::{Error, Result};

/// Extension angle recovered from xi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionAngle {
    /// theta in [0, pi).
    pub theta: f64,
    /// ||(1/xi + Q)/P| - 1|; zero when xi lies on the admissible circle.
    pub modulus_mismatch: f64,
}

/// Terms of 1/xi = e^{2i theta} P - Q.
fn terms(sys: &CoulombSystem, ch: &Channel, e: f64) -> Result<(Complex64, Complex64)> {
    let f = "extension_map";
    let sigma = ch.sigma().ok_or_else(|| Error::domain(f, "channel must be supercritical"))?;
    let lam_sq = sys.m * sys.m - e * e;
    if !(lam_sq > 0.0) {
        return Err(Error::domain(f, format!("lambda^2 = {lam_sq} must be positive")));
    }
    let lam = lam_sq.sqrt();
    let (a, s) = (sys.a, ch.s_eff());
    let k = a * e / lam;
    let base = 0.5 - 0.5 * s - k;
    let c = ch.nu + a * (sys.m + e) / lam;
    let phase = Complex64::new(0.0, -2.0 * sigma * (2.0 * lam / sys.e0).ln()).exp();
    let ratio = Complex64::new(c, s * sigma) / Complex64::new(c, -s * sigma);
    let p = phase * ratio * gamma(Complex64::new(0.0, 2.0 * sigma))? * rgamma(Complex64::new(base, sigma))?;
    let q = gamma(Complex64::new(0.0, -2.0 * sigma))? * rgamma(Complex64::new(base, -sigma))?;
    Ok((p, q))
}

/// xi for a given extension angle: xi = 1/(e^{2i theta} P - Q).
pub fn xi_from_theta(sys: &CoulombSystem, ch: &Channel, e: f64, theta: f64) -> Result<Complex64> {
    let (p, q) = terms(sys, ch, e)?;
    Ok((Complex64::new(0.0, 2.0 * theta).exp() * p - q).inv())
}

/// Extension angle theta = arg((1/xi + Q)/P)/2 mod pi.
pub fn extension_map(sys: &CoulombSystem, ch: &Channel, e: f64, xi: Complex64) -> Result<ExtensionAngle> {
    if xi.norm() == 0.0 || !xi.norm().is_finite() {
        return Err(Error::domain("extension_map", "xi must be finite and non-zero"));
    }
    let (p, q) = terms(sys, ch, e)?;
    let u = (xi.inv() + q) / p;
    let theta = (0.5 * u.arg()).rem_euclid(PI);
    Ok(ExtensionAngle { theta: if theta >= PI { 0.0 } else { theta }, modulus_mismatch: (u.norm() - 1.0).abs() })
}
