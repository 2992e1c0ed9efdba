use num_complex::Complex64;

use super::{Channel, CoulombSystem, RadialDoublet};
use crate::specfun::{gamma, rgamma, whittaker_m, whittaker_w};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// Built from Whittaker M, finite at the origin for subcritical channels.
    Regular,
    /// Built from Whittaker W, decaying at infinity.
    Irregular,
}

fn lambda(function: &'static str, sys: &CoulombSystem, e: f64) -> Result<f64> {
    let lam_sq = sys.m * sys.m - e * e;
    if !(lam_sq > 0.0) {
        return Err(Error::domain(function, format!("lambda^2 = m^2 - E^2 = {lam_sq} must be positive")));
    }
    Ok(lam_sq.sqrt())
}

/// Ratio C/A of the second Whittaker term to the first, with A = 1.
pub fn coefficient_ratio(sys: &CoulombSystem, ch: &Channel, e: f64, kind: SolutionKind) -> Result<Complex64> {
    let lam = lambda("coefficient_ratio", sys, e)?;
    let k = sys.a * e / lam;
    let ma = sys.m * sys.a / lam;
    let se = ch.s_eff();
    Ok(match kind {
        SolutionKind::Regular => (se * ch.exponent() - k) / (ch.nu + ma),
        SolutionKind::Irregular => {
            if se > 0.0 {
                Complex64::new(ma - ch.nu, 0.0)
            } else {
                Complex64::new(1.0 / (ma + ch.nu), 0.0)
            }
        }
    })
}

fn doublet(sys: &CoulombSystem, ch: &Channel, e: f64, r: f64, kind: SolutionKind) -> Result<RadialDoublet> {
    let function = match kind {
        SolutionKind::Regular => "regular_solution",
        SolutionKind::Irregular => "irregular_solution",
    };
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(function, format!("r = {r} must be positive")));
    }
    let lam = lambda(function, sys, e)?;
    let x = 2.0 * lam * r;
    let k = sys.a * e / lam;
    let se = ch.s_eff();
    let mu = ch.exponent();
    let c = coefficient_ratio(sys, ch, e, kind)?;
    let kp = Complex64::new(k + 0.5 * se, 0.0);
    let km = Complex64::new(k - 0.5 * se, 0.0);
    let (first, second) = match kind {
        SolutionKind::Regular => (whittaker_m(kp, mu, x)?, whittaker_m(km, mu, x)?),
        SolutionKind::Irregular => (whittaker_w(kp, mu, x)?, whittaker_w(km, mu, x)?),
    };
    let pre = 1.0 / (2.0 * lam * x).sqrt();
    let f = (sys.m + e).sqrt() * pre * (first + c * second);
    let g = ch.nu_sign() * (sys.m - e).sqrt() * pre * (first - c * second);
    Ok(RadialDoublet { f, g, r })
}

/// Regular solution F_R at radius r (normalization A_R = 1).
pub fn regular_solution(sys: &CoulombSystem, ch: &Channel, e: f64, r: f64) -> Result<RadialDoublet> {
    doublet(sys, ch, e, r, SolutionKind::Regular)
}

/// Irregular solution F_I at radius r (normalization A_I = 1).
pub fn irregular_solution(sys: &CoulombSystem, ch: &Channel, e: f64, r: f64) -> Result<RadialDoublet> {
    doublet(sys, ch, e, r, SolutionKind::Irregular)
}

/// Combination F_R + xi F_I.
pub fn self_adjoint_combination(
    sys: &CoulombSystem,
    ch: &Channel,
    e: f64,
    xi: Complex64,
    r: f64,
) -> Result<RadialDoublet> {
    let reg = regular_solution(sys, ch, e, r)?;
    let irr = irregular_solution(sys, ch, e, r)?;
    Ok(RadialDoublet { f: reg.f + xi * irr.f, g: reg.g + xi * irr.g, r })
}

/// Radial current (conj(f) g - conj(g) f)/i = 2 Im(conj(f) g).
pub fn boundary_flux(d: &RadialDoublet) -> f64 {
    2.0 * (d.f.conj() * d.g).im
}

/// Closed-form Wronskian g_R f_I - f_R g_I for a subcritical channel.
pub fn wronskian(sys: &CoulombSystem, ch: &Channel, e: f64) -> Result<Complex64> {
    let gam = ch
        .gamma()
        .filter(|g| *g > 0.0)
        .ok_or_else(|| Error::domain("wronskian", "channel must be strictly subcritical"))?;
    let lam = lambda("wronskian", sys, e)?;
    let k = sys.a * e / lam;
    let z = gam + 0.5 - 0.5 * ch.s_eff() - k;
    let inv = rgamma(Complex64::new(z, 0.0))?;
    if inv.norm() == 0.0 || (z <= 0.0 && (z - z.round()).abs() < 1e-14) {
        return Err(Error::Pole { function: "wronskian", at: format!("bound state, Gamma argument {z}") });
    }
    let num = gamma(Complex64::new(2.0 * gam, 0.0))?;
    Ok(-2.0 * num * inv * (ch.s.value() * gam / (ch.nu + sys.m * sys.a / lam)))
}

/// Wronskian g_R f_I - f_R g_I evaluated from the doublets at radius r.
pub fn numerical_wronskian(sys: &CoulombSystem, ch: &Channel, e: f64, r: f64) -> Result<Complex64> {
    let reg = regular_solution(sys, ch, e, r)?;
    let irr = irregular_solution(sys, ch, e, r)?;
    Ok(reg.g * irr.f - reg.f * irr.g)
}

/// Relative residual of the radial equations for a sampled doublet.
///
/// Derivatives use the 5-point central stencil with `h = 1e-4 r`, Richardson
/// extrapolated once against `2h`. The larger component residual is divided by
/// `(|f| + |g|) (m + |E| + (1 + |a| + nu)/r)`.
pub fn ode_residual<F>(sys: &CoulombSystem, ch: &Channel, e: f64, doublet_fn: F, r: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<RadialDoublet>,
{
    if !(r > 0.0) {
        return Err(Error::domain("ode_residual", format!("r = {r} must be positive")));
    }
    let h = 1e-4 * r;
    let mut samples = [RadialDoublet { f: Complex64::default(), g: Complex64::default(), r }; 9];
    for (i, slot) in samples.iter_mut().enumerate() {
        *slot = doublet_fn(r + (i as f64 - 4.0) * h)?;
    }
    let stencil = |step: usize, comp: fn(&RadialDoublet) -> Complex64| {
        let at = |j: i64| comp(&samples[(4 + j * step as i64) as usize]);
        (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h * step as f64)
    };
    let deriv = |comp: fn(&RadialDoublet) -> Complex64| (16.0 * stencil(1, comp) - stencil(2, comp)) / 15.0;
    let fp = deriv(|d| d.f);
    let gp = deriv(|d| d.g);
    let RadialDoublet { f, g, .. } = samples[4];
    let s = ch.s.value();
    let nu = ch.nu_signed;
    let e1 = s * gp + nu * g / r + sys.m * f - sys.a * f / r - e * f;
    let e2 = -s * fp + nu * f / r - sys.m * g - sys.a * g / r - e * g;
    let scale = (f.norm() + g.norm()) * (sys.m + e.abs() + (1.0 + sys.a + ch.nu) / r);
    Ok(e1.norm().max(e2.norm()) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac_coulomb::{make_channel, Spin};

    #[test]
    fn real_doublet_has_no_flux() {
        let d = RadialDoublet { f: Complex64::new(0.3, 0.0), g: Complex64::new(-2.0, 0.0), r: 1.0 };
        assert_eq!(boundary_flux(&d), 0.0);
    }

    #[test]
    fn lambda_must_be_real() {
        let sys = CoulombSystem::massive(0.3, 1.0).unwrap();
        let ch = make_channel(&sys, 0, Spin::Up);
        assert!(regular_solution(&sys, &ch, 1.2, 1.0).is_err());
        assert!(wronskian(&sys, &ch, 1.0).is_err());
    }

    #[test]
    fn wronskian_spin_factor() {
        let sys = CoulombSystem::massive(0.3, 1.0).unwrap();
        let up = make_channel(&sys, 0, Spin::Up);
        let down = make_channel(&sys, 1, Spin::Down);
        // same nu and gamma; differing s and s_eff
        let wu = wronskian(&sys, &up, -0.2).unwrap();
        let wd = wronskian(&sys, &down, -0.2).unwrap();
        assert!(wu.re < 0.0 && wd.re > 0.0);
    }

    #[test]
    fn closed_form_matches_doublets() {
        let sys = CoulombSystem::massive(0.3, 1.0).unwrap();
        for (l, s) in [(0, Spin::Up), (0, Spin::Down), (1, Spin::Down), (-1, Spin::Up), (2, Spin::Up)] {
            let ch = make_channel(&sys, l, s);
            let w = wronskian(&sys, &ch, 0.1).unwrap();
            let n = numerical_wronskian(&sys, &ch, 0.1, 1.3).unwrap();
            assert!((w - n).norm() < 1e-10 * w.norm(), "l={l} s={s:?}: {w} vs {n}");
        }
    }
}
