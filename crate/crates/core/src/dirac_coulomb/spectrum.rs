use std::f64::consts::PI;

use num_complex::Complex64;

use super::{make_channel, Channel, CoulombSystem, SpectrumKind, SpectrumLevel, Spin};
use crate::massive_polarization::resonance_width;
use crate::numerics::roots::brent;
use crate::specfun::{digamma, gamma};
use crate::{Error, Result};

/// Above this sigma the massless resonance formula is outside its small-sigma validity.
pub const SHARP_RESONANCE_SIGMA: f64 = 0.3;

const EXP_LIMIT: f64 = 709.0;

/// Bound level k of the channel (l, s = +1) with nu = |l + mu + 1/2|:
/// E = m (k + gamma) / sqrt((k + gamma)^2 + a^2).
pub fn bound_spectrum(sys: &CoulombSystem, k: u32, l: i64) -> Result<SpectrumLevel> {
    if l < 0 {
        return Err(Error::domain("bound_spectrum", format!("l = {l} must be non-negative")));
    }
    bound_level(sys, &make_channel(sys, l, Spin::Up), k)
}

/// Bound level k of an arbitrary subcritical channel: the k-th zero of
/// 1/Gamma(gamma + 1/2 - s_eff/2 - aE/lambda).
pub fn bound_level(sys: &CoulombSystem, ch: &Channel, k: u32) -> Result<SpectrumLevel> {
    let f = "bound_spectrum";
    if !(sys.m > 0.0) {
        return Err(Error::domain(f, "requires m > 0"));
    }
    let gam = match ch.gamma() {
        Some(g) if g > 0.0 => g,
        _ => return Err(Error::domain(f, format!("a = {} not below nu = {}", sys.a, ch.nu))),
    };
    let n = k as f64 + gam + 0.5 - 0.5 * ch.s_eff();
    let e = sys.m * n / (n * n + sys.a * sys.a).sqrt();
    Ok(SpectrumLevel { k: k as i64, l: ch.l, s: ch.s, energy_re: e, width: 0.0, kind: SpectrumKind::Bound })
}

/// Binding energy m - E of `bound_spectrum(sys, k, l)` without cancellation.
pub fn binding_energy(sys: &CoulombSystem, k: u32, l: i64) -> Result<f64> {
    let ch = make_channel(sys, l, Spin::Up);
    let lvl = bound_level(sys, &ch, k)?;
    let n = k as f64 + ch.gamma().unwrap_or(0.0);
    let root = (n * n + sys.a * sys.a).sqrt();
    debug_assert!(lvl.energy_re <= sys.m);
    Ok(sys.m * sys.a * sys.a / (root * (root + n)))
}

/// tau = 1/(2a) + Im psi(i a) + pi/2.
pub fn resonance_tau(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain("resonance_tau", format!("a = {a} must be positive")));
    }
    Ok(0.5 / a + digamma(Complex64::new(0.0, a))?.im + 0.5 * PI)
}

/// Massless quasistationary level k in the nu = |mu + 1/2| channel (l = 0, s = +1).
pub fn resonance_spectrum_massless(sys: &CoulombSystem, k: i64) -> Result<SpectrumLevel> {
    resonance_in_channel(sys, &make_channel(sys, 0, Spin::Up), k)
}

/// Massless quasistationary level k of a supercritical channel:
/// Re E = -E0 |cos tau| exp(-k/(2 sigma) + theta/sigma + pi coth(pi a)/(2a)),
/// width = |tan tau| |Re E|.
pub fn resonance_in_channel(sys: &CoulombSystem, ch: &Channel, k: i64) -> Result<SpectrumLevel> {
    let f = "resonance_spectrum_massless";
    if sys.m != 0.0 {
        return Err(Error::domain(f, "requires m = 0"));
    }
    let sigma = ch.sigma().ok_or_else(|| Error::domain(f, "channel is subcritical"))?;
    let a = sys.a;
    let tau = resonance_tau(a)?;
    let exponent = -(k as f64) / (2.0 * sigma) + sys.theta / sigma + PI / (PI * a).tanh() / (2.0 * a);
    let log_mag = sys.e0.ln() + tau.cos().abs().ln() + exponent;
    if log_mag > EXP_LIMIT {
        return Err(Error::Overflow { function: f, log_magnitude: log_mag });
    }
    let energy_re = -log_mag.exp();
    Ok(SpectrumLevel {
        k,
        l: ch.l,
        s: ch.s,
        energy_re,
        width: tau.tan().abs() * energy_re.abs(),
        kind: SpectrumKind::Resonance,
    })
}

/// Dived ground level of a massive supercritical system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivedResonance {
    pub level: SpectrumLevel,
    /// Depth below -m.
    pub epsilon: f64,
    /// |equation residual| at the returned root.
    pub residual: f64,
    pub sigma0: f64,
}

/// Left side minus right side of the dived-level equation at depth epsilon:
/// arg Gamma(2i s0) - s0 Re psi(-i z) - (s0/2) ln(8 eps/m) + atan(s0 (1 - 2a^2 eps/m)) + theta,
/// z = sqrt(m a^2/(2 eps)).
pub fn dived_level_equation(sys: &CoulombSystem, epsilon: f64) -> Result<f64> {
    let f = "solve_dived_resonance";
    if !(sys.m > 0.0) || sys.a <= 0.5 {
        return Err(Error::domain(f, "requires m > 0 and a > 1/2"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::domain(f, format!("epsilon = {epsilon} must be positive")));
    }
    let (a, m) = (sys.a, sys.m);
    let s0 = (a * a - 0.25).sqrt();
    let z = (m * a * a / (2.0 * epsilon)).sqrt();
    let arg = gamma(Complex64::new(0.0, 2.0 * s0))?.arg();
    let psi = digamma(Complex64::new(0.0, -z))?.re;
    Ok(arg - s0 * psi - 0.5 * s0 * (8.0 * epsilon / m).ln() + (s0 * (1.0 - 2.0 * a * a * epsilon / m)).atan() + sys.theta)
}

/// Solves the dived-level equation on [1e-12 m, m]: log-grid scan, then Brent
/// refinement in ln(epsilon) on the bracket with the largest epsilon.
pub fn solve_dived_resonance(sys: &CoulombSystem) -> Result<DivedResonance> {
    let module = "solve_dived_resonance";
    let m = sys.m;
    dived_level_equation(sys, m)?;
    let (lo, hi) = (1e-12 * m, m);
    let n = 241;
    let grid: Vec<f64> = (0..n).map(|i| lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).collect();
    let eq = |t: f64| dived_level_equation(sys, t.exp()).unwrap_or(f64::NAN);
    let values: Vec<f64> = grid.iter().map(|&t| eq(t)).collect();
    let bracket = (0..n - 1).rev().find(|&i| values[i].signum() != values[i + 1].signum() || values[i + 1] == 0.0);
    let Some(i) = bracket else {
        let residual = values.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
        return Err(Error::NoRoot { module, lo, hi, residual });
    };
    let root = brent(eq, grid[i], grid[i + 1], 1e-15, 200)
        .ok_or(Error::NoRoot { module, lo: grid[i].exp(), hi: grid[i + 1].exp(), residual: values[i].abs() })?;
    let epsilon = root.x.exp();
    let residual = dived_level_equation(sys, epsilon)?.abs();
    Ok(DivedResonance {
        level: SpectrumLevel {
            k: 0,
            l: 0,
            s: Spin::Up,
            energy_re: -(m + epsilon),
            width: resonance_width(sys.a, m, epsilon)?,
            kind: SpectrumKind::Resonance,
        },
        epsilon,
        residual,
        sigma0: (sys.a * sys.a - 0.25).sqrt(),
    })
}
