use num_complex::Complex64;

use crate::numerics::ComplexSum;
use crate::{Error, Result};

const EXP_LIMIT: f64 = 709.0;
const SERIES_MAX_TERMS: usize = 20_000;
const ASYMPTOTIC_MAX_TERMS: usize = 400;
const TAYLOR_MAX_TERMS: usize = 400;
const MAX_STEP: f64 = 2.0;
const MAX_START: f64 = 20_000.0;

fn validate(function: &'static str, kappa: Complex64, mu: Complex64, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(function, format!("x = {x} must be positive and finite")));
    }
    let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
    if !finite(kappa) || !finite(mu) {
        return Err(Error::domain(function, "non-finite parameter"));
    }
    Ok(())
}

fn scaled(function: &'static str, log_pre: Complex64, v: Complex64, d: Complex64) -> Result<(Complex64, Complex64)> {
    let log_mag = log_pre.re + v.norm().max(d.norm()).ln();
    if log_mag > EXP_LIMIT || !log_mag.is_finite() && log_mag > 0.0 {
        return Err(Error::Overflow { function, log_magnitude: log_mag });
    }
    let pre = log_pre.exp();
    Ok((pre * v, pre * d))
}

/// Whittaker M_{kappa,mu}(x) and its x-derivative from the Kummer series
/// M = e^{-x/2} x^{mu+1/2} 1F1(mu-kappa+1/2; 1+2mu; x).
pub fn whittaker_m_with_derivative(kappa: Complex64, mu: Complex64, x: f64) -> Result<(Complex64, Complex64)> {
    validate("whittaker_M", kappa, mu, x)?;
    let b = 1.0 + 2.0 * mu;
    if b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round() {
        return Err(Error::Pole { function: "whittaker_M", at: format!("2mu = {}", 2.0 * mu) });
    }
    let a = mu - kappa + 0.5;
    let mut s = ComplexSum::new();
    let mut ds = ComplexSum::new();
    let mut t = Complex64::new(1.0, 0.0);
    let mut converged = false;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        s.add(t);
        ds.add(t * nf);
        let ratio = (a + nf) / ((b + nf) * (nf + 1.0)) * x;
        t *= ratio;
        let sv = s.value();
        if !(sv.re.is_finite() && sv.im.is_finite()) {
            return Err(Error::Overflow { function: "whittaker_M", log_magnitude: f64::INFINITY });
        }
        if t.norm() == 0.0 || (n >= 2 && ratio.norm() < 0.5 && t.norm() <= 1e-17 * sv.norm()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            module: "whittaker_M",
            tol: 1e-17,
            estimate: t.norm(),
            terms: SERIES_MAX_TERMS,
        });
    }
    let (sv, dv) = (s.value(), ds.value() / x);
    let log_pre = Complex64::new(-0.5 * x, 0.0) + (mu + 0.5) * x.ln();
    let deriv = sv * (-0.5 + (mu + 0.5) / x) + dv;
    scaled("whittaker_M", log_pre, sv, deriv)
}

/// Whittaker M_{kappa,mu}(x).
pub fn whittaker_m(kappa: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    whittaker_m_with_derivative(kappa, mu, x).map(|v| v.0)
}

/// Asymptotic series of e^{x/2} x^{-kappa} W at large x, with the x-derivative
/// of the same scaled sum. `None` when the series has not converged.
fn asymptotic_w(p: Complex64, q: Complex64, x: f64) -> Option<(Complex64, Complex64)> {
    let mut s = ComplexSum::new();
    let mut d = ComplexSum::new();
    let mut t = Complex64::new(1.0, 0.0);
    let growth_from = p.norm() + q.norm() + 2.0;
    for n in 0..ASYMPTOTIC_MAX_TERMS {
        let nf = n as f64;
        s.add(t);
        d.add(t * (-nf / x));
        let next = t * (p + nf) * (q + nf) / (-(nf + 1.0) * x);
        if next.norm() == 0.0 || next.norm() <= 1e-17 * s.value().norm() {
            return Some((s.value(), d.value()));
        }
        if nf > growth_from && next.norm() > t.norm() {
            return None;
        }
        t = next;
    }
    None
}

/// One Taylor step of the Whittaker equation x^2 w'' = (x^2/4 - kappa x - 1/4 + mu^2) w
/// from x0 to x0 + h. Works with the scaled coefficients b_n = a_n h^n.
fn taylor_step(kappa: Complex64, c: Complex64, x0: f64, w: Complex64, wp: Complex64, h: f64) -> (Complex64, Complex64) {
    let big_a = Complex64::new(0.25 * x0 * x0, 0.0) - kappa * x0 - c;
    let big_b = Complex64::new(0.5 * x0, 0.0) - kappa;
    let x0sq = x0 * x0;
    let h2 = h * h;
    // b[n-2], b[n-1], b[n], b[n+1]
    let zero = Complex64::new(0.0, 0.0);
    let (mut bm2, mut bm1, mut bn, mut bp1) = (zero, zero, w, wp * h);
    let mut val = ComplexSum::new();
    let mut der = ComplexSum::new();
    val.add(bn);
    val.add(bp1);
    der.add(bp1);
    let mut small = 0;
    for n in 0..TAYLOR_MAX_TERMS {
        let nf = n as f64;
        let bn2 = (h2 * (big_a * bn + big_b * h * bm1 + bm2 * (0.25 * h2))
            - bp1 * (2.0 * x0 * h * (nf + 1.0) * nf)
            - bn * (h2 * nf * (nf - 1.0)))
            / (x0sq * (nf + 2.0) * (nf + 1.0));
        let dterm = bn2 * (nf + 2.0);
        val.add(bn2);
        der.add(dterm);
        if bn2.norm() <= 1e-18 * val.value().norm() && dterm.norm() <= 1e-18 * der.value().norm() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        bm2 = bm1;
        bm1 = bn;
        bn = bp1;
        bp1 = bn2;
    }
    (val.value(), der.value() / h)
}

/// Whittaker W_{kappa,mu}(x) and its x-derivative: asymptotic expansion at a
/// large starting point, then Taylor continuation of the differential equation
/// inward to x.
pub fn whittaker_w_with_derivative(kappa: Complex64, mu: Complex64, x: f64) -> Result<(Complex64, Complex64)> {
    validate("whittaker_W", kappa, mu, x)?;
    let p = 0.5 + mu - kappa;
    let q = 0.5 - mu - kappa;
    let mut xs = x.max(30.0 + 2.0 * (p * q).norm() + 4.0 * (kappa.norm() + mu.norm()));
    let (s, d) = loop {
        if let Some(v) = asymptotic_w(p, q, xs) {
            break v;
        }
        xs *= 1.5;
        if xs > MAX_START {
            return Err(Error::Convergence {
                module: "whittaker_W",
                tol: 1e-17,
                estimate: f64::NAN,
                terms: ASYMPTOTIC_MAX_TERMS,
            });
        }
    };
    let log_pre = Complex64::new(-0.5 * xs, 0.0) + kappa * xs.ln();
    let mut w = s;
    let mut wp = s * (-0.5 + kappa / xs) + d;
    let c = 0.25 - mu * mu;
    let mut x0 = xs;
    while x0 > x {
        let h = (0.5 * x0).min(MAX_STEP);
        let (h, next) = if x0 - h <= x { (x0 - x, x) } else { (h, x0 - h) };
        let (nw, nwp) = taylor_step(kappa, c, x0, w, wp, -h);
        w = nw;
        wp = nwp;
        x0 = next;
    }
    scaled("whittaker_W", log_pre, w, wp)
}

/// Whittaker W_{kappa,mu}(x).
pub fn whittaker_w(kappa: Complex64, mu: Complex64, x: f64) -> Result<Complex64> {
    whittaker_w_with_derivative(kappa, mu, x).map(|v| v.0)
}
