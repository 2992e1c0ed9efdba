//! Vacuum polarization by massive fermions: the first-order polarization
//! operator, the induced charge in coordinate space and the real vacuum
//! polarization estimates after a level dives.
//!
//! Charges are in units of e0; densities in units of e0 m^2.

use std::f64::consts::PI;

use crate::numerics::quad;
use crate::{Error, Result};

/// Polarization operator per unit e0^2:
/// (1/8 pi) [(4 m^2 - q^2)/|q| atan(|q|/2m) - 2m].
pub fn polarization_operator(q_sq: f64, m: f64) -> Result<f64> {
    let f = "polarization_operator";
    if !(q_sq >= 0.0) || !q_sq.is_finite() {
        return Err(Error::domain(f, format!("q^2 = {q_sq} must be non-negative")));
    }
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::domain(f, format!("m = {m} must be positive")));
    }
    let q = q_sq.sqrt();
    let t = q / (2.0 * m);
    let bracket = if t < 0.1 {
        // 2m sum_k (-1)^k 4k t^{2k}/(4k^2 - 1)
        let t2 = t * t;
        let mut p = 1.0;
        let mut s = 0.0;
        for k in 1..=12 {
            p *= -t2;
            let kf = k as f64;
            s += p * 4.0 * kf / (4.0 * kf * kf - 1.0);
        }
        2.0 * m * s
    } else {
        (4.0 * m * m - q_sq) / q * t.atan() - 2.0 * m
    };
    Ok(bracket / (8.0 * PI))
}

/// Induced charge in momentum space, -a Pi/|q| with Pi per unit e0^2; units of e0.
pub fn induced_charge_momentum(a: f64, q_abs: f64, m: f64) -> Result<f64> {
    if !(q_abs > 0.0) {
        return Err(Error::domain("induced_charge_momentum", format!("|q| = {q_abs} must be positive")));
    }
    Ok(-a * polarization_operator(q_abs * q_abs, m)? / q_abs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassiveRegime {
    Exact,
    SmallMr,
    LargeMr,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassiveChargePoint {
    pub r: f64,
    pub q_m: f64,
    pub regime: MassiveRegime,
    /// Absolute error estimate of q_m.
    pub error_estimate: f64,
}

/// Integral of e^{-2 mr (cosh u - 1)} / cosh^3 u over u in [0, inf).
fn scaled_integral(mr: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let integrand = |u: f64| {
        let c = u.cosh();
        // cosh u - 1 = 2 sinh^2(u/2)
        let s = (0.5 * u).sinh();
        (-4.0 * mr * s * s).exp() / (c * c * c)
    };
    // tail beyond U is below (8/3) e^{-3U} e^{-2mr(cosh U - 1)}
    let tail_bound = |u: f64| 8.0 / 3.0 * (-3.0 * u - 2.0 * mr * (u.cosh() - 1.0)).exp();
    let mut upper = 4.0;
    loop {
        let r = quad::integrate(integrand, 0.0, upper, rel_tol, 0.0, 2000);
        if !r.converged {
            return Err(Error::Quadrature { module: "q_m_coordinate", tol: rel_tol, estimate: r.error / r.value.abs() });
        }
        let tail = tail_bound(upper);
        if tail <= 1e-3 * rel_tol * r.value.abs() || upper >= 40.0 {
            return Ok((r.value, r.error + tail));
        }
        upper += 4.0;
    }
}

/// Q_m(r) = -a int_1^inf e^{-2 m r x}/(x^3 sqrt(x^2 - 1)) dx, with x = cosh u.
pub fn q_m_coordinate(a: f64, m: f64, r: f64, quad_tol: f64) -> Result<MassiveChargePoint> {
    let f = "q_m_coordinate";
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(f, format!("r = {r} must be positive")));
    }
    if !(m >= 0.0) || !(quad_tol > 0.0) {
        return Err(Error::domain(f, "m must be non-negative and quad_tol positive"));
    }
    let mr = m * r;
    let (i, err) = scaled_integral(mr, quad_tol)?;
    let decay = (-2.0 * mr).exp();
    Ok(MassiveChargePoint { r, q_m: -a * i * decay, regime: MassiveRegime::Exact, error_estimate: a.abs() * err * decay })
}

/// Small-mr branch -a (pi/4 - c_fit mr), valid for mr < 0.1.
pub fn q_m_small_r(a: f64, m: f64, r: f64, c_fit: f64) -> Result<f64> {
    let mr = m * r;
    if !(r >= 0.0) || !(mr < 0.1) {
        return Err(Error::domain("q_m_small_r", format!("mr = {mr} outside [0, 0.1)")));
    }
    Ok(-a * (0.25 * PI - c_fit * mr))
}

/// Prefactor choice for the large-mr asymptote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LargeRPrefactor {
    /// Endpoint Laplace analysis: sqrt(pi)/2.
    Derived,
    /// sqrt(4 pi).
    Alternate,
}

impl LargeRPrefactor {
    pub fn value(self) -> f64 {
        match self {
            LargeRPrefactor::Derived => 0.5 * PI.sqrt(),
            LargeRPrefactor::Alternate => (4.0 * PI).sqrt(),
        }
    }
}

/// Smallest mr accepted by the large-mr branch.
pub const LARGE_MR_MIN: f64 = 2.0;

/// Large-mr branch -a P e^{-2mr}/sqrt(mr) with the derived prefactor.
pub fn q_m_large_r(a: f64, m: f64, r: f64) -> Result<f64> {
    q_m_large_r_with(a, m, r, LargeRPrefactor::Derived)
}

/// Large-mr branch with a selectable prefactor.
pub fn q_m_large_r_with(a: f64, m: f64, r: f64, prefactor: LargeRPrefactor) -> Result<f64> {
    let mr = m * r;
    if !(mr >= LARGE_MR_MIN) || !mr.is_finite() {
        return Err(Error::domain("q_m_large_r", format!("mr = {mr} below {LARGE_MR_MIN}")));
    }
    Ok(-a * prefactor.value() * (-2.0 * mr).exp() / mr.sqrt())
}

/// Fit window of the small-mr slope.
pub const SLOPE_FIT_RANGE: (f64, f64) = (1e-3, 5e-2);

/// Least-squares slope through the origin of pi/4 - I(mr) against mr on a
/// 16-point log grid over `SLOPE_FIT_RANGE`.
pub fn fit_small_r_slope(quad_tol: f64) -> Result<f64> {
    let grid = crate::numerics::log_grid(SLOPE_FIT_RANGE.0, SLOPE_FIT_RANGE.1, 16);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for mr in grid {
        let q = q_m_coordinate(1.0, 1.0, mr, quad_tol)?.q_m;
        let y = 0.25 * PI + q;
        sxy += mr * y;
        sxx += mr * mr;
    }
    Ok(sxy / sxx)
}

/// Width m exp(-sqrt(2 m pi a^2/epsilon)) of a dived level at depth epsilon.
pub fn resonance_width(a: f64, m: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) || !(m > 0.0) {
        return Err(Error::domain("resonance_width", "epsilon and m must be positive"));
    }
    Ok(m * (-(2.0 * m * PI * a * a / epsilon).sqrt()).exp())
}

/// Piecewise real vacuum polarization density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealPolarizationModel {
    pub a_cr: f64,
    pub m: f64,
    pub epsilon0: f64,
    /// Radius (units 1/m) separating the small- and large-r branches.
    pub r_switch: f64,
    /// Factor applied to the large-r branch for continuity at r_switch.
    pub match_constant: f64,
}

impl RealPolarizationModel {
    pub fn new(a_cr: f64, m: f64, epsilon0: f64) -> Result<Self> {
        let f = "real_polarization_density";
        if !(a_cr > 0.5) || !(m > 0.0) || !(epsilon0 > 0.0) {
            return Err(Error::domain(f, "requires a_cr > 1/2, m > 0, epsilon0 > 0"));
        }
        let mut model = Self { a_cr, m, epsilon0, r_switch: 1.0 / m, match_constant: 1.0 };
        // largest crossing of |small| and |large| below mr = 10, scanning inward
        let grid = crate::numerics::log_grid(1e-6, 10.0, 701);
        let diff = |mr: f64| model.small_branch(mr / m).abs().ln() - model.large_branch(mr / m).abs().ln();
        let mut found = None;
        for w in grid.windows(2).rev() {
            if diff(w[0]).signum() != diff(w[1]).signum() {
                found = crate::numerics::roots::brent(diff, w[0], w[1], 1e-14, 200).map(|r| r.x);
                break;
            }
        }
        match found {
            Some(mr) => model.r_switch = mr / m,
            None => model.match_constant = model.small_branch(1.0 / m) / model.large_branch(1.0 / m),
        }
        Ok(model)
    }

    /// -m^2 [2 ln^2(mr) - 2 ln(mr)/a_cr + 1/a_cr^2]
    pub fn small_branch(&self, r: f64) -> f64 {
        let l = (self.m * r).ln();
        -self.m * self.m * (2.0 * l * l - 2.0 * l / self.a_cr + 1.0 / (self.a_cr * self.a_cr))
    }

    /// -(m/r) e^{-2 sqrt(r/l)}, l = 1/sqrt(2 m epsilon0)
    pub fn large_branch(&self, r: f64) -> f64 {
        let ell = 1.0 / (2.0 * self.m * self.epsilon0).sqrt();
        -(self.m / r) * (-2.0 * (r / ell).sqrt()).exp()
    }

    pub fn density(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::domain("real_polarization_density", format!("r = {r} must be positive")));
        }
        Ok(if r <= self.r_switch { self.small_branch(r) } else { self.match_constant * self.large_branch(r) })
    }
}

/// Real vacuum polarization density at r, units of e0 m^2.
pub fn real_polarization_density(a_cr: f64, m: f64, epsilon0: f64, r: f64) -> Result<f64> {
    RealPolarizationModel::new(a_cr, m, epsilon0)?.density(r)
}

/// Composite estimate Q_m(r) m^2 + j_real(r); the real part is dropped when
/// `include_real` is false.
pub fn total_massive_density(
    a: f64,
    a_cr: f64,
    m: f64,
    epsilon0: f64,
    r: f64,
    include_real: bool,
) -> Result<f64> {
    let q = q_m_coordinate(a, m, r, 1e-10)?.q_m * m * m;
    if !include_real {
        return Ok(q);
    }
    Ok(q + real_polarization_density(a_cr, m, epsilon0, r)?)
}
