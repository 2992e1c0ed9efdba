//! Induced vacuum charge of massless fermions for subcritical coupling and
//! the Hartree self-consistency of the effective coupling.
//!
//! Charges are returned in units of the electron charge e = -e0 < 0, so a
//! positive number is a screening charge.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numerics::Sum;
use crate::specfun::{digamma, ln_gamma, trigamma, BERNOULLI_2K};
use crate::{Error, Result};

/// Above this argument the summands use their large-l expansions.
const ASYMPTOTIC_FROM: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailAccel {
    /// Plain partial sum; the tail is estimated by S(N) - S(N/2).
    None,
    /// Richardson extrapolation of partial sums at N/16, ..., N in powers of 1/N.
    RichardsonTail,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Hard truncation of the l sum.
    pub l_max: usize,
    /// Target absolute bound on the truncation error.
    pub tail_tol: f64,
    pub accel: TailAccel,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { l_max: 2000, tail_tol: 1e-10, accel: TailAccel::RichardsonTail }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.l_max < 8 {
            return Err(Error::domain("SeriesControl", format!("l_max = {} must be at least 8", self.l_max)));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::domain("SeriesControl", format!("tail_tol = {} must be positive", self.tail_tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedCharge {
    pub q1: f64,
    pub qr: f64,
    pub total: f64,
    pub tail_estimate: f64,
    pub l_used: usize,
}

fn check_couplings(function: &'static str, a: f64, alpha: f64) -> Result<()> {
    if !a.is_finite() || !(alpha.abs() < 0.5) {
        return Err(Error::domain(function, format!("alpha = {alpha} must satisfy |alpha| < 1/2")));
    }
    if !(a.abs() < 0.5 - alpha.abs()) {
        return Err(Error::domain(
            function,
            format!("|a| = {} must be below min nu = {} (all channels subcritical)", a.abs(), 0.5 - alpha.abs()),
        ));
    }
    Ok(())
}

/// x psi'(x) - 1 - 1/(2x).
fn trigamma_remainder(x: f64) -> Result<f64> {
    if x < ASYMPTOTIC_FROM {
        return Ok(x * trigamma(x)? - 1.0 - 0.5 / x);
    }
    let x2inv = 1.0 / (x * x);
    let mut p = x2inv;
    let mut s = Sum::new();
    for b in BERNOULLI_2K {
        let t = b * p;
        s.add(t);
        if t.abs() < 1e-18 * s.value().abs() {
            break;
        }
        p *= x2inv;
    }
    Ok(s.value())
}

/// Summand of Q1 at angular momentum l (without the 2a/pi prefactor).
pub fn q1_summand(l: usize, alpha: f64) -> Result<f64> {
    let c = l as f64 + 0.5;
    Ok(trigamma_remainder(c + alpha)? + trigamma_remainder(c - alpha)?)
}

/// sin(n phi)/n - sin(phi) by its Taylor series (small n phi).
fn sine_difference(n: f64, phi: f64) -> f64 {
    let phi2 = phi * phi;
    let n2 = n * n;
    let mut s = Sum::new();
    let mut pw = phi; // phi^{2j+1}
    let mut nw = 1.0; // n^{2j}
    let mut fact = 1.0; // (2j+1)!
    for j in 1..40 {
        let jf = j as f64;
        pw *= phi2;
        nw *= n2;
        fact *= (2.0 * jf) * (2.0 * jf + 1.0);
        let t = if j % 2 == 1 { -1.0 } else { 1.0 } * pw * (nw - 1.0) / fact;
        s.add(t);
        if t.abs() <= 1e-18 * s.value().abs() {
            break;
        }
    }
    s.value()
}

/// One channel of the Q_r summand:
/// Im[ln Gamma(z) + ln(z)/2 - z psi(z)] + a/(2x) - a x psi'(x), z = sqrt(x^2 - a^2) - i a.
fn qr_half(x: f64, a: f64) -> Result<f64> {
    if x >= ASYMPTOTIC_FROM {
        let phi = (a / x).asin();
        let xinv2 = 1.0 / (x * x);
        let mut p = xinv2 / x; // x^{1-2k} for k = 2
        let mut s = Sum::new();
        for (k, b) in BERNOULLI_2K.iter().enumerate().skip(1) {
            let n = (2 * k + 1) as f64;
            let t = b * p * sine_difference(n, phi);
            s.add(t);
            if t.abs() <= 1e-18 * s.value().abs() {
                break;
            }
            p *= xinv2;
        }
        return Ok(s.value());
    }
    let gam = ((x - a) * (x + a)).sqrt();
    let z = Complex64::new(gam, -a);
    let t = ln_gamma(z)? + 0.5 * z.ln() - z * digamma(z)?;
    Ok(t.im + 0.5 * a / x - a * x * trigamma(x)?)
}

/// Summand of Q_r at angular momentum l (without the 2/pi prefactor).
pub fn qr_summand(l: usize, a: f64, alpha: f64) -> Result<f64> {
    let c = l as f64 + 0.5;
    Ok(qr_half(c + alpha, a)? + qr_half(c - alpha, a)?)
}

struct SeriesSum {
    value: f64,
    tail_estimate: f64,
    l_used: usize,
}

fn sum_series<F>(module: &'static str, summand: F, ctl: &SeriesControl, scale: f64) -> Result<SeriesSum>
where
    F: Fn(usize) -> Result<f64>,
{
    ctl.validate()?;
    let n_terms = ((ctl.l_max + 1) / 16) * 16;
    if n_terms == 0 {
        let n = ctl.l_max + 1;
        let mut s = Sum::new();
        let mut last = 0.0;
        for l in 0..n {
            last = summand(l)?;
            s.add(last);
        }
        let estimate = last.abs() * n as f64 * scale.abs();
        if !(estimate <= ctl.tail_tol) {
            return Err(Error::Convergence { module, tol: ctl.tail_tol, estimate, terms: n });
        }
        return Ok(SeriesSum { value: s.value() * scale, tail_estimate: estimate, l_used: n - 1 });
    }
    let checkpoints: Vec<usize> = (0..5).map(|j| n_terms >> (4 - j)).collect();
    let mut partial = Vec::with_capacity(5);
    let mut s = Sum::new();
    let mut abs_sum = 0.0;
    let mut next = 0;
    for l in 0..n_terms {
        let t = summand(l)?;
        s.add(t);
        abs_sum += t.abs();
        if l + 1 == checkpoints[next] {
            partial.push(s.value());
            next += 1;
        }
    }
    let rounding = 16.0 * f64::EPSILON * abs_sum;
    let (value, estimate) = match ctl.accel {
        TailAccel::None => (partial[4], (partial[4] - partial[3]).abs() + rounding),
        TailAccel::RichardsonTail => {
            let mut table = partial.clone();
            let mut prev_best = table[4];
            let mut best = table[4];
            for j in 1..5 {
                let f = (1u64 << j) as f64;
                for i in (j..5).rev() {
                    table[i] = (f * table[i] - table[i - 1]) / (f - 1.0);
                }
                prev_best = best;
                best = table[4];
            }
            (best, (best - prev_best).abs() + 8.0 * rounding)
        }
    };
    let estimate = estimate * scale.abs();
    if !(estimate <= ctl.tail_tol) {
        return Err(Error::Convergence { module, tol: ctl.tail_tol, estimate, terms: n_terms });
    }
    Ok(SeriesSum { value: value * scale, tail_estimate: estimate, l_used: n_terms - 1 })
}

fn q1_series(a: f64, alpha: f64, ctl: &SeriesControl) -> Result<SeriesSum> {
    check_couplings("q1", a, alpha)?;
    if a == 0.0 {
        return Ok(SeriesSum { value: 0.0, tail_estimate: 0.0, l_used: 0 });
    }
    let scale = 2.0 * a / PI;
    sum_series("q1", |l| q1_summand(l, alpha), ctl, scale)
}

fn qr_series(a: f64, alpha: f64, ctl: &SeriesControl) -> Result<SeriesSum> {
    check_couplings("qr", a, alpha)?;
    if a == 0.0 {
        return Ok(SeriesSum { value: 0.0, tail_estimate: 0.0, l_used: 0 });
    }
    sum_series("qr", |l| qr_summand(l, a, alpha), ctl, 2.0 / PI)
}

/// Q1(a, alpha) in units of e.
pub fn q1(a: f64, alpha: f64, ctl: &SeriesControl) -> Result<f64> {
    q1_series(a, alpha, ctl).map(|s| s.value)
}

/// Q_r(a, alpha) in units of e.
pub fn qr(a: f64, alpha: f64, ctl: &SeriesControl) -> Result<f64> {
    qr_series(a, alpha, ctl).map(|s| s.value)
}

/// Total induced charge Q1 + Q_r in units of e.
pub fn q_ind(a: f64, alpha: f64, ctl: &SeriesControl) -> Result<InducedCharge> {
    let s1 = q1_series(a, alpha, ctl)?;
    let sr = qr_series(a, alpha, ctl)?;
    Ok(InducedCharge {
        q1: s1.value,
        qr: sr.value,
        total: s1.value + sr.value,
        tail_estimate: s1.tail_estimate + sr.tail_estimate,
        l_used: s1.l_used.max(sr.l_used),
    })
}

/// Damping factor of the Hartree iteration.
pub const HARTREE_DAMPING: f64 = 0.5;
/// Residual tolerance of the Hartree fixed point.
pub const HARTREE_TOL: f64 = 1e-10;

/// Solves a_eff = a_bare - e0^2 Q_ind(a_eff) (alpha = 0) by damped iteration,
/// safeguarded by bisection on the bracket collected along the way.
pub fn effective_coupling_subcritical(a_bare: f64, e0_sq: f64, ctl: &SeriesControl) -> Result<f64> {
    let module = "effective_coupling_subcritical";
    if !(e0_sq > 0.0) || !e0_sq.is_finite() {
        return Err(Error::domain(module, format!("e0_sq = {e0_sq} must be positive")));
    }
    if !(a_bare >= 0.0) || !a_bare.is_finite() {
        return Err(Error::domain(module, format!("a_bare = {a_bare} must be non-negative")));
    }
    if a_bare == 0.0 {
        return Ok(0.0);
    }
    let limit = 0.5;
    let a_max = limit - 1e-9;
    let image = |a: f64| -> Result<f64> { Ok(a_bare - e0_sq * q_ind(a, 0.0, ctl)?.total) };
    let top = image(a_max)?;
    if top > a_max {
        return Err(Error::SupercriticalExcursion { module, a: top, limit });
    }
    let (mut lo, mut hi) = (0.0f64, a_max);
    let mut a = (a_bare / (1.0 + 0.25 * PI * e0_sq)).min(a_max);
    let mut residual = f64::INFINITY;
    for _ in 0..500 {
        let t = image(a)?;
        residual = t - a;
        if residual.abs() < HARTREE_TOL {
            return Ok(a);
        }
        if residual > 0.0 {
            lo = lo.max(a);
        } else {
            hi = hi.min(a);
        }
        let next = a + HARTREE_DAMPING * residual;
        a = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
    }
    Err(Error::NoConvergence { module, iterations: 500, residual: residual.abs(), tol: HARTREE_TOL })
}
