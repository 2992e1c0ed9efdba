//! Vacuum polarization of planar Dirac fermions in a Coulomb field with an
//! optional Aharonov-Bohm flux.
//!
//! Modules:
//! - [`specfun`]: complex log-Gamma, digamma, trigamma, Whittaker M/W, Bessel I.
//! - [`dirac_coulomb`]: radial solutions, Wronskians, spectra, extension parameter.
//! - [`subcritical_charge`]: induced charge series and Hartree self-consistency.
//! - [`supercritical_charge`]: log-periodic densities, annulus charge, RG flow.
//! - [`massive_polarization`]: polarization operator and massive induced charge.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dirac_coulomb;
mod error;
pub mod massive_polarization;
pub mod numerics;
pub mod specfun;
pub mod subcritical_charge;
pub mod supercritical_charge;

pub use dirac_coulomb::{Channel, CoulombSystem, RadialDoublet, Regime, SpectrumKind, SpectrumLevel};
pub use error::{Error, Result};
pub use specfun::ComplexScalar;
