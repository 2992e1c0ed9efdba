//! Massless supercritical induced density, annulus charge and the screening
//! renormalization-group flow.
//!
//! Densities are in units of e per area (radii in units of 1/E0); the annulus
//! charge is in units of e0.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dirac_coulomb::{make_channel, Channel, CoulombSystem, Spin};
use crate::numerics::ode::Dopri5;
use crate::numerics::Sum;
use crate::specfun::{gamma, ln_gamma, EULER_GAMMA};
use crate::{Error, Result};

/// Supercritical channel label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelTag {
    pub l: i64,
    pub s: Spin,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupercriticalDensityPoint {
    pub r: f64,
    pub density_re: f64,
    pub density_im: f64,
    pub channels: Vec<ChannelTag>,
}

/// sigma_0 = sqrt(a^2 - 1/4).
pub fn sigma0(a: f64) -> Result<f64> {
    if !(a >= 0.5) || !a.is_finite() {
        return Err(Error::domain("sigma0", format!("a = {a} must be at least 1/2")));
    }
    Ok(((a - 0.5) * (a + 0.5)).sqrt())
}

/// Constant factor u_0 of omega_- = 1 - u_0 e^{2i theta + 2i sigma ln(E0 r)}.
pub fn omega_factor(sys: &CoulombSystem, ch: &Channel) -> Result<Complex64> {
    let sigma = ch.sigma().ok_or_else(|| Error::domain("omega_minus", "channel must be supercritical"))?;
    let (a, nu, s) = (sys.a, ch.nu, ch.s_eff());
    let h = 0.5 * (1.0 - s);
    let lg = ln_gamma(Complex64::new(0.0, 2.0 * sigma))? - ln_gamma(Complex64::new(0.0, -2.0 * sigma))?
        + ln_gamma(Complex64::new(h, a - sigma))?
        - ln_gamma(Complex64::new(h, a + sigma))?;
    let ratio = Complex64::new(nu, s * sigma - a) / Complex64::new(nu, -a - s * sigma);
    Ok(ratio * lg.exp())
}

/// omega_-(r) = 1 - e^{2i theta + 2i sigma ln(E0 r)} u_0.
pub fn omega_minus(sys: &CoulombSystem, ch: &Channel, r: f64) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::domain("omega_minus", format!("r = {r} must be positive")));
    }
    let sigma = ch.sigma().ok_or_else(|| Error::domain("omega_minus", "channel must be supercritical"))?;
    let phase = Complex64::new(0.0, 2.0 * sys.theta + 2.0 * sigma * (sys.e0 * r).ln()).exp();
    Ok(1.0 - phase * omega_factor(sys, ch)?)
}

fn check_massless_integer_flux(function: &'static str, sys: &CoulombSystem) -> Result<()> {
    if sys.m != 0.0 {
        return Err(Error::domain(function, "requires m = 0"));
    }
    if sys.flux_fraction() != 0.0 {
        return Err(Error::domain(function, "fractional flux is not supported in the supercritical regime"));
    }
    Ok(())
}

/// All (l, s) with nu = |l + mu + s/2| < a, each listed once.
pub fn supercritical_channels(sys: &CoulombSystem) -> Vec<Channel> {
    let n = sys.flux_integer();
    let reach = sys.a.ceil() as i64 + 2;
    let mut out = Vec::new();
    for l in (-reach - n)..=(reach - n) {
        for s in [Spin::Up, Spin::Down] {
            let ch = make_channel(sys, l, s);
            if ch.is_supercritical() {
                out.push(ch);
            }
        }
    }
    out
}

/// Density (1/(2 pi^2 r^2)) sum over supercritical channels of sigma/omega_-.
pub fn density_general(sys: &CoulombSystem, r: f64) -> Result<SupercriticalDensityPoint> {
    let f = "density_general";
    check_massless_integer_flux(f, sys)?;
    if !(r > 0.0) {
        return Err(Error::domain(f, format!("r = {r} must be positive")));
    }
    let channels = supercritical_channels(sys);
    if channels.is_empty() {
        return Err(Error::domain(f, format!("no supercritical channel at a = {}", sys.a)));
    }
    let mut re = Sum::new();
    let mut im = Sum::new();
    let mut tags = Vec::with_capacity(channels.len());
    for ch in &channels {
        let sigma = ch.sigma().unwrap_or(0.0);
        let t = sigma / omega_minus(sys, ch, r)?;
        re.add(t.re);
        im.add(t.im);
        tags.push(ChannelTag { l: ch.l, s: ch.s, sigma });
    }
    let norm = 1.0 / (2.0 * PI * PI * r * r);
    Ok(SupercriticalDensityPoint { r, density_re: norm * re.value(), density_im: norm * im.value(), channels: tags })
}

/// Terms summed explicitly in the phase series.
pub const PHASE_SERIES_TERMS: usize = 100_000;

/// Phase psi = -pi - 2 C s + sum_n [2s/n - 2 atan(2s/n) + atan(2ns/(n^2+1/4))],
/// summed to `PHASE_SERIES_TERMS` with the n^{-3} tail added analytically.
pub fn window_phase(s: f64) -> f64 {
    let mut acc = Sum::new();
    for n in (1..=PHASE_SERIES_TERMS).rev() {
        let nf = n as f64;
        acc.add(2.0 * s / nf - 2.0 * (2.0 * s / nf).atan() + (2.0 * nf * s / (nf * nf + 0.25)).atan());
    }
    let big_n = PHASE_SERIES_TERMS as f64;
    let zeta_tail = 0.5 / (big_n * big_n) - 0.5 / big_n.powi(3) + 0.25 / big_n.powi(4);
    acc.add((8.0 * s.powi(3) / 3.0 - 0.5 * s) * zeta_tail);
    -PI - 2.0 * EULER_GAMMA * s + acc.value()
}

/// Closed form for 1/2 < a < 3/2 where only the nu = 1/2 channels are supercritical.
pub fn density_window(sys: &CoulombSystem, r: f64) -> Result<SupercriticalDensityPoint> {
    let f = "density_window";
    check_massless_integer_flux(f, sys)?;
    let a = sys.a;
    if !(a > 0.5 && a < 1.5) {
        return Err(Error::domain(f, format!("a = {a} outside (1/2, 3/2)")));
    }
    if !(r > 0.0) {
        return Err(Error::domain(f, format!("r = {r} must be positive")));
    }
    let s0 = sigma0(a)?;
    let big_a = gamma(Complex64::new(0.0, 2.0 * s0))? * gamma(Complex64::new(0.0, a - s0))?
        / (gamma(Complex64::new(0.0, -2.0 * s0))? * gamma(Complex64::new(0.0, a + s0))?);
    let mod_a = big_a.norm();
    let z = 2.0 * (a - s0) / a;
    let phi = 2.0 * sys.theta + 2.0 * s0 * (sys.e0 * r).ln() + window_phase(s0);
    let e1 = Complex64::new(0.0, phi).exp();
    let x = mod_a * z * e1;
    let y = mod_a * mod_a * (a - s0) / (a + s0) * e1 * e1;
    let w = s0 * (2.0 - x) / (1.0 - x + y) / (PI * PI * r * r);
    let channels = supercritical_channels(sys)
        .iter()
        .map(|ch| ChannelTag { l: ch.l, s: ch.s, sigma: s0 })
        .collect();
    Ok(SupercriticalDensityPoint { r, density_re: w.re, density_im: w.im, channels })
}

/// Small-sigma_0 limit sigma_0/(pi^2 r^2) of the density, units of e.
pub fn density_small_sigma(a: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain("density_small_sigma", format!("r = {r} must be positive")));
    }
    Ok(sigma0(a)? / (PI * PI * r * r))
}

/// Charge -(2 sigma_0/pi) ln(r/r0) inside the annulus r0 < r' < r, units of e0.
pub fn annulus_charge(a: f64, r0: f64, r: f64) -> Result<f64> {
    let f = "annulus_charge";
    if !(r0 > 0.0) || !(r >= r0) {
        return Err(Error::domain(f, format!("need 0 < r0 <= r, got r0 = {r0}, r = {r}")));
    }
    Ok(-2.0 * sigma0(a)? / PI * (r / r0).ln())
}

/// Point of the screening flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RGState {
    pub g: f64,
    /// ln(r/r0)
    pub log_r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RgFlow {
    pub states: Vec<RGState>,
    /// ln(r*/r0) where g reaches 1/2, if reached within the grid.
    pub crossing_log_r: Option<f64>,
}

/// Offset above g = 1/2 at which the crossing event is located by bisection.
pub const RG_EVENT_OFFSET: f64 = 1e-8;

/// arccosh(2 g), the variable in which the flow is linear.
pub fn rg_invariant(g: f64) -> f64 {
    (2.0 * g + (4.0 * g * g - 1.0).max(0.0).sqrt()).ln()
}

/// Closed-form flow g(t) = cosh(max(u0 - 2 e0^2 t/pi, 0))/2, t = ln(r/r0).
pub fn rg_closed_form(g0: f64, e0_sq: f64, log_r: f64) -> f64 {
    let u = (rg_invariant(g0) - 2.0 * e0_sq / PI * log_r).max(0.0);
    0.5 * u.cosh()
}

/// Screening radius r* = r0 exp(pi u0/(2 e0^2)).
pub fn screening_radius(g0: f64, e0_sq: f64, r0: f64) -> f64 {
    r0 * (PI * rg_invariant(g0) / (2.0 * e0_sq)).exp()
}

/// Integrates dg/dln(r/r0) = -(2 e0^2/pi) sqrt(g^2 - 1/4) on `r_grid`.
///
/// The crossing of g = 1/2 + `RG_EVENT_OFFSET` is located by bisection on
/// the step length; the remaining interval to g = 1/2 is integrated by
/// quadrature of the separable equation. The flow is clamped at 1/2 afterwards.
pub fn rg_flow(g0: f64, e0_sq: f64, r0: f64, r_grid: &[f64]) -> Result<RgFlow> {
    let module = "rg_flow";
    if !(g0 >= 0.5) || !g0.is_finite() {
        return Err(Error::domain(module, format!("g0 = {g0} must be at least 1/2")));
    }
    if !(e0_sq > 0.0) || !(r0 > 0.0) {
        return Err(Error::domain(module, "e0_sq and r0 must be positive"));
    }
    if r_grid.is_empty() || (r_grid[0] - r0).abs() > 1e-12 * r0 {
        return Err(Error::domain(module, "r_grid must start at r0"));
    }
    if r_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain(module, "r_grid must be strictly increasing"));
    }
    let c = 2.0 * e0_sq / PI;
    let rhs = move |_: f64, g: f64| -c * ((g - 0.5) * (g + 0.5)).max(0.0).sqrt();
    let solver = Dopri5::default();
    let event = 0.5 + RG_EVENT_OFFSET;
    let tail = (1.0 + 2.0 * RG_EVENT_OFFSET).acosh() / c;

    let (mut t, mut g) = (0.0, g0);
    let mut h: f64 = 1e-3;
    let mut crossing = if g0 <= event { Some(rg_invariant(g0) / c) } else { None };
    let mut states = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let target = (r / r0).ln();
        while crossing.is_none() && t < target {
            let h_try = h.min(target - t);
            let (g_new, err) = solver.step(&rhs, t, g, h_try);
            if err > 1.0 {
                h = h_try * Dopri5::factor(err);
                if h < solver.h_min {
                    return Err(Error::StepFailure { module, t });
                }
                continue;
            }
            if g_new <= event {
                let (mut lo, mut hi) = (0.0, h_try);
                while hi - lo > 4.0 * f64::EPSILON * (t + hi).max(1.0) {
                    let mid = 0.5 * (lo + hi);
                    if solver.step(&rhs, t, g, mid).0 > event {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                crossing = Some(t + 0.5 * (lo + hi) + tail);
                break;
            }
            t += h_try;
            g = g_new;
            h = h_try * Dopri5::factor(err);
        }
        let value = match crossing {
            Some(tc) if target >= tc => 0.5,
            Some(tc) if target > t => 0.5 * (c * (tc - target)).cosh(),
            _ => g,
        };
        states.push(RGState { g: value, log_r: target });
    }
    Ok(RgFlow { states, crossing_log_r: crossing })
}
