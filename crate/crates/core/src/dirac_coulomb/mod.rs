//! Radial Dirac-Coulomb problem in two dimensions with an Aharonov-Bohm flux.
//!
//! The radial operator is `h = i s sigma_2 d/dr + sigma_1 nu'/r + sigma_3 m - a/r`
//! with signed `nu' = l + mu + s/2`. Solutions are expressed through
//! Whittaker functions of `x = 2 lambda r`, `lambda = sqrt(m^2 - E^2)`.

mod extension;
mod solutions;
mod spectrum;

pub use extension::{extension_map, xi_from_theta, ExtensionAngle};
pub use solutions::{
    boundary_flux, coefficient_ratio, irregular_solution, numerical_wronskian, ode_residual,
    regular_solution, self_adjoint_combination, wronskian, SolutionKind,
};
pub use spectrum::{
    binding_energy, bound_level, bound_spectrum, dived_level_equation, resonance_in_channel,
    resonance_spectrum_massless, resonance_tau, solve_dived_resonance, DivedResonance,
    SHARP_RESONANCE_SIGMA,
};

use crate::specfun::ComplexScalar;
use crate::{Error, Result};

/// Physical configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombSystem {
    /// Coulomb coupling, dimensionless.
    pub a: f64,
    /// Aharonov-Bohm flux mu = n + alpha.
    pub mu_flux: f64,
    /// Fermion mass (inverse length).
    pub m: f64,
    /// Self-adjoint extension angle in [0, pi].
    pub theta: f64,
    /// Energy scale of the extension parameter.
    pub e0: f64,
}

impl CoulombSystem {
    pub fn new(a: f64, mu_flux: f64, m: f64, theta: f64, e0: f64) -> Result<Self> {
        let f = "CoulombSystem::new";
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::domain(f, format!("a = {a} must be non-negative")));
        }
        if !mu_flux.is_finite() {
            return Err(Error::domain(f, "mu_flux must be finite"));
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::domain(f, format!("m = {m} must be non-negative")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::domain(f, format!("theta = {theta} outside [0, pi]")));
        }
        if !(e0 > 0.0) || !e0.is_finite() {
            return Err(Error::domain(f, format!("E0 = {e0} must be positive")));
        }
        Ok(Self { a, mu_flux, m, theta, e0 })
    }

    /// Massless system without flux, `E0 = 1`.
    pub fn massless(a: f64, theta: f64) -> Result<Self> {
        Self::new(a, 0.0, 0.0, theta, 1.0)
    }

    /// Massive system without flux, `theta = 0`, `E0 = 1`.
    pub fn massive(a: f64, m: f64) -> Result<Self> {
        Self::new(a, 0.0, m, 0.0, 1.0)
    }

    /// Integer part n of the flux.
    pub fn flux_integer(&self) -> i64 {
        self.mu_flux.floor() as i64
    }

    /// Fractional part alpha of the flux, in [0, 1).
    pub fn flux_fraction(&self) -> f64 {
        self.mu_flux - self.mu_flux.floor()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn from_sign(s: i32) -> Option<Self> {
        match s {
            1 => Some(Spin::Up),
            -1 => Some(Spin::Down),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    Subcritical { gamma: f64 },
    Supercritical { sigma: f64 },
}

/// Angular sector (l, s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub l: i64,
    pub s: Spin,
    /// |l + mu + s/2|
    pub nu: f64,
    /// l + mu + s/2
    pub nu_signed: f64,
    /// nu^2 - a^2
    pub gamma_sq: f64,
    pub regime: Regime,
}

impl Channel {
    /// gamma for subcritical channels, i*sigma for supercritical ones.
    pub fn exponent(&self) -> ComplexScalar {
        match self.regime {
            Regime::Subcritical { gamma } => ComplexScalar::new(gamma, 0.0),
            Regime::Supercritical { sigma } => ComplexScalar::new(0.0, sigma),
        }
    }

    /// Sign of nu'.
    pub fn nu_sign(&self) -> f64 {
        if self.nu_signed < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    /// Effective spin s * sign(nu') entering the Whittaker indices.
    pub fn s_eff(&self) -> f64 {
        self.s.value() * self.nu_sign()
    }

    pub fn is_supercritical(&self) -> bool {
        matches!(self.regime, Regime::Supercritical { .. })
    }

    pub fn sigma(&self) -> Option<f64> {
        match self.regime {
            Regime::Supercritical { sigma } => Some(sigma),
            Regime::Subcritical { .. } => None,
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self.regime {
            Regime::Subcritical { gamma } => Some(gamma),
            Regime::Supercritical { .. } => None,
        }
    }
}

/// Builds the channel (l, s) for a system.
pub fn make_channel(sys: &CoulombSystem, l: i64, s: Spin) -> Channel {
    let nu_signed = l as f64 + sys.mu_flux + 0.5 * s.value();
    let nu = nu_signed.abs();
    let gamma_sq = nu * nu - sys.a * sys.a;
    let regime = if gamma_sq >= 0.0 {
        Regime::Subcritical { gamma: gamma_sq.sqrt() }
    } else {
        Regime::Supercritical { sigma: (-gamma_sq).sqrt() }
    };
    Channel { l, s, nu, nu_signed, gamma_sq, regime }
}

/// Two-component radial wavefunction at radius r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialDoublet {
    pub f: ComplexScalar,
    pub g: ComplexScalar,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Bound,
    Resonance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLevel {
    pub k: i64,
    pub l: i64,
    pub s: Spin,
    pub energy_re: f64,
    pub width: f64,
    pub kind: SpectrumKind,
}
