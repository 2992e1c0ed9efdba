mod common;

use common::*;
use num_complex::Complex64;
use planar_vacuum::dirac_coulomb::*;
use planar_vacuum::specfun::gamma;
use planar_vacuum::{Error, RadialDoublet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn massive(a: f64) -> CoulombSystem {
    CoulombSystem::massive(a, 1.0).unwrap()
}

fn lambda(sys: &CoulombSystem, e: f64) -> f64 {
    (sys.m * sys.m - e * e).sqrt()
}

#[test]
fn channel_examples() {
    let ch = make_channel(&massive(0.3), 0, Spin::Up);
    assert_eq!(ch.nu, 0.5);
    assert!((ch.gamma().unwrap() - 0.4).abs() < 1e-15);

    let sys = CoulombSystem::massless(1.0, 0.0).unwrap();
    let ch = make_channel(&sys, 0, Spin::Down);
    assert_eq!(ch.nu, 0.5);
    assert!((ch.sigma().unwrap() - 0.75f64.sqrt()).abs() < 1e-15);

    let sys = CoulombSystem::new(0.3, 0.25, 1.0, 0.0, 1.0).unwrap();
    let ch = make_channel(&sys, 0, Spin::Up);
    assert_eq!(ch.nu, 0.75);
    let want = (0.75f64 * 0.75 - 0.09).sqrt();
    assert!((ch.gamma().unwrap() - want).abs() < 1e-15);
    assert_eq!(sys.flux_integer(), 0);
    assert_eq!(sys.flux_fraction(), 0.25);
}

#[test]
fn system_validation() {
    assert!(CoulombSystem::new(-0.1, 0.0, 1.0, 0.0, 1.0).is_err());
    assert!(CoulombSystem::new(0.1, 0.0, -1.0, 0.0, 1.0).is_err());
    assert!(CoulombSystem::new(0.1, 0.0, 1.0, 4.0, 1.0).is_err());
    assert!(CoulombSystem::new(0.1, 0.0, 1.0, 0.0, 0.0).is_err());
    let sys = CoulombSystem::new(0.1, 2.75, 1.0, 0.0, 1.0).unwrap();
    assert_eq!(sys.flux_integer(), 2);
    assert_eq!(sys.flux_fraction(), 0.75);
}

#[test]
fn wronskian_matches_closed_form_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let a = rng.gen_range(0.05..0.45);
        let sys = massive(a);
        let l = rng.gen_range(-2i64..=2);
        let s = if rng.gen_bool(0.5) { Spin::Up } else { Spin::Down };
        let ch = make_channel(&sys, l, s);
        let e = rng.gen_range(-0.95..0.95);
        let lam = lambda(&sys, e);
        let closed = wronskian(&sys, &ch, e).unwrap();
        for x in [0.3, 1.0, 3.0, 30.0] {
            let num = numerical_wronskian(&sys, &ch, e, x / lam).unwrap();
            assert!(rel_err_c(num, closed) < 1e-8, "a={a} l={l} s={s:?} E={e} x={x}: {num} vs {closed}");
        }
    }
}

#[test]
fn wronskian_vanishes_at_bound_states() {
    let sys = massive(0.3);
    for (l, s) in [(0, Spin::Up), (1, Spin::Up), (1, Spin::Down), (-1, Spin::Up)] {
        let ch = make_channel(&sys, l, s);
        for k in 0..3 {
            let e = bound_level(&sys, &ch, k).unwrap().energy_re;
            let lo = wronskian(&sys, &ch, e - 1e-7).unwrap().re;
            let hi = wronskian(&sys, &ch, e + 1e-7).unwrap().re;
            assert!(lo * hi < 0.0, "l={l} s={s:?} k={k}: {lo} {hi}");
            let at = wronskian(&sys, &ch, e);
            assert!(at.map_or(true, |w| w.norm() < 1e-6 * lo.abs().max(hi.abs()) * 1e6));
        }
    }
}

#[test]
fn wronskian_reports_pole_at_exact_level() {
    let sys = massive(0.3);
    let ch = make_channel(&sys, 0, Spin::Up);
    let e = bound_spectrum(&sys, 0, 0).unwrap().energy_re;
    match wronskian(&sys, &ch, e) {
        Err(Error::Pole { .. }) => {}
        Ok(w) => assert!(w.norm() < 1e-10),
        Err(other) => panic!("unexpected {other}"),
    }
}

#[test]
fn wronskian_spin_flip_sign() {
    let sys = massive(0.2);
    let up = make_channel(&sys, 0, Spin::Up);
    let down = make_channel(&sys, 0, Spin::Down);
    let e = 0.1;
    let wu = wronskian(&sys, &up, e).unwrap();
    let wd = wronskian(&sys, &down, e).unwrap();
    let lam = lambda(&sys, e);
    let k = sys.a * e / lam;
    let z_u = up.gamma().unwrap() + 0.5 - 0.5 * up.s_eff() - k;
    let z_d = down.gamma().unwrap() + 0.5 - 0.5 * down.s_eff() - k;
    let bare = |w: Complex64, ch: &Channel, z: f64| {
        w * gamma(Complex64::new(z, 0.0)).unwrap() * (ch.nu + sys.m * sys.a / lam)
            / (2.0 * gamma(Complex64::new(2.0 * ch.gamma().unwrap(), 0.0)).unwrap() * ch.gamma().unwrap())
    };
    assert!((bare(wu, &up, z_u).re + 1.0).abs() < 1e-13);
    assert!((bare(wd, &down, z_d).re - 1.0).abs() < 1e-13);
}

#[test]
fn doublets_satisfy_radial_equations() {
    let sets = [(0.3, 0, Spin::Up, 0.2), (0.3, 0, Spin::Down, -0.6), (0.45, 1, Spin::Up, 0.9), (0.1, -2, Spin::Down, 0.0), (0.25, 3, Spin::Up, -0.95)];
    for &(a, l, s, e) in &sets {
        let sys = massive(a);
        let ch = make_channel(&sys, l, s);
        let lam = lambda(&sys, e);
        for x in [0.1, 1.0, 5.0] {
            let r = x / lam;
            let reg = ode_residual(&sys, &ch, e, |t| regular_solution(&sys, &ch, e, t), r).unwrap();
            let irr = ode_residual(&sys, &ch, e, |t| irregular_solution(&sys, &ch, e, t), r).unwrap();
            assert!(reg < 1e-6, "regular a={a} l={l} s={s:?} E={e} r={r}: {reg}");
            assert!(irr < 1e-6, "irregular a={a} l={l} s={s:?} E={e} r={r}: {irr}");
        }
    }
}

#[test]
fn non_solution_has_order_one_residual() {
    let sys = massive(0.3);
    let ch = make_channel(&sys, 0, Spin::Up);
    let fake = |t: f64| {
        Ok(RadialDoublet { f: Complex64::new((-t).exp(), 0.0), g: Complex64::new(t, 0.0), r: t })
    };
    let res = ode_residual(&sys, &ch, 0.2, fake, 1.0).unwrap();
    assert!(res > 0.05, "{res}");
}

#[test]
fn regular_solution_power_law_at_origin() {
    let sys = massive(0.3);
    for (l, s) in [(0, Spin::Up), (1, Spin::Down), (2, Spin::Up)] {
        let ch = make_channel(&sys, l, s);
        let gam = ch.gamma().unwrap();
        let f1 = regular_solution(&sys, &ch, 0.4, 5e-5).unwrap().f.norm();
        let f2 = regular_solution(&sys, &ch, 0.4, 1e-4).unwrap().f.norm();
        assert!(rel_err(f2 / f1, 2f64.powf(gam)) < 1e-3, "{l} {s:?}: {} vs {}", f2 / f1, 2f64.powf(gam));
    }
}

#[test]
fn irregular_solution_decays_exponentially() {
    let sys = massive(0.3);
    let ch = make_channel(&sys, 0, Spin::Up);
    let e = 0.0;
    let lam = lambda(&sys, e);
    let r = 20.0 / lam;
    let h = 1e-3 * r;
    let lf = |t: f64| irregular_solution(&sys, &ch, e, t).unwrap().f.norm().ln();
    let slope = (lf(r + h) - lf(r - h)) / (2.0 * h);
    assert!(rel_err(slope, -lam) < 0.01, "{slope} vs {}", -lam);
}

#[test]
fn boundary_flux_vanishes() {
    let d = RadialDoublet { f: Complex64::new(1.5, 0.0), g: Complex64::new(-0.2, 0.0), r: 1.0 };
    assert_eq!(boundary_flux(&d), 0.0);

    let sys = CoulombSystem::new(0.3, 0.9f64.hypot(0.3) - 0.5, 1.0, 0.0, 1.0).unwrap();
    let ch = make_channel(&sys, 0, Spin::Up);
    assert!((ch.gamma().unwrap() - 0.9).abs() < 1e-12);
    let d = regular_solution(&sys, &ch, 0.3, 1e-6).unwrap();
    assert!(boundary_flux(&d).abs() < 1e-8);

    let sys = massive(0.4);
    let ch = make_channel(&sys, 0, Spin::Up);
    assert!(ch.gamma().unwrap() < 0.5);
    for r in [1e-2, 1e-4, 1e-6] {
        let d = self_adjoint_combination(&sys, &ch, 0.3, Complex64::new(0.7, 0.0), r).unwrap();
        assert!(boundary_flux(&d).abs() < 1e-12 * (d.f.norm() * d.g.norm()).max(1.0));
    }
    let flux = |r: f64| boundary_flux(&self_adjoint_combination(&sys, &ch, 0.3, Complex64::new(0.0, 0.7), r).unwrap());
    assert!(flux(1e-2).abs() > 0.0);
}

#[test]
fn bound_spectrum_values() {
    let sys = massive(0.3);
    let lvl = bound_spectrum(&sys, 0, 0).unwrap();
    assert!((lvl.energy_re - 0.8).abs() < 1e-14);
    assert_eq!(lvl.kind, SpectrumKind::Bound);
    assert_eq!(lvl.width, 0.0);

    let weak = massive(1e-9);
    for (k, l) in [(0, 0), (3, 1), (10, 4)] {
        assert!((bound_spectrum(&weak, k, l).unwrap().energy_re - 1.0).abs() < 1e-15);
    }
    assert!(bound_spectrum(&CoulombSystem::massless(0.3, 0.0).unwrap(), 0, 0).is_err());
    assert!(bound_spectrum(&massive(0.6), 0, 0).is_err());
}

#[test]
fn bound_spectrum_taylor_tail() {
    let sys = massive(0.3);
    let gam = 0.4;
    for k in [200u32, 1000] {
        let binding = binding_energy(&sys, k, 0).unwrap();
        let n = k as f64 + gam;
        let want = 0.09 / (2.0 * n * n);
        assert!(rel_err(binding, want) < 0.01, "k={k}");
    }
}

#[test]
fn bound_levels_increase_and_are_degenerate() {
    let sys = massive(0.35);
    for l in 0..4 {
        let mut prev = 0.0;
        for k in 0..30 {
            let e = bound_spectrum(&sys, k, l).unwrap().energy_re;
            assert!(e > prev && e < 1.0);
            prev = e;
        }
    }
    for l in 0..4i64 {
        let up = make_channel(&sys, l, Spin::Up);
        let mirrored = make_channel(&sys, -l, Spin::Down);
        let shifted = make_channel(&sys, l + 1, Spin::Down);
        assert_eq!(up.nu, shifted.nu);
        for k in 0..10 {
            let e = bound_level(&sys, &up, k).unwrap().energy_re;
            assert!((e - bound_level(&sys, &mirrored, k).unwrap().energy_re).abs() < 1e-15);
            assert!((bound_level(&sys, &up, k + 1).unwrap().energy_re - bound_level(&sys, &shifted, k).unwrap().energy_re).abs() < 1e-15);
        }
    }
}

#[test]
fn extension_round_trip_and_energy_scale() {
    let sys = CoulombSystem::new(0.9, 0.0, 1.0, 0.0, 1.0).unwrap();
    for (l, s) in [(0, Spin::Up), (0, Spin::Down)] {
        let ch = make_channel(&sys, l, s);
        let sigma = ch.sigma().unwrap();
        for e in [-0.8, 0.0, 0.5] {
            for theta in [0.05, 1.0, 2.2, 3.1] {
                let xi = xi_from_theta(&sys, &ch, e, theta).unwrap();
                let back = extension_map(&sys, &ch, e, xi).unwrap();
                assert!((back.theta - theta).abs() < 1e-9);
                assert!(back.modulus_mismatch < 1e-9);
                for c in [2.0, 0.3] {
                    let scaled = CoulombSystem { e0: c * sys.e0, ..sys };
                    let moved = extension_map(&scaled, &ch, e, xi).unwrap().theta;
                    let want = (theta - sigma * f64::ln(c)).rem_euclid(PI);
                    let diff = (moved - want).rem_euclid(PI);
                    assert!(diff.min(PI - diff) < 1e-9, "theta={theta} c={c}: {moved} vs {want}");
                }
            }
        }
    }
}

#[test]
fn resonance_ladder() {
    let sys = CoulombSystem::massless(0.6, 0.0).unwrap();
    let ch = make_channel(&sys, 0, Spin::Up);
    let sigma = ch.sigma().unwrap();
    assert!((sigma - 0.11f64.sqrt()).abs() < 1e-15);
    let levels: Vec<f64> = (0..6).map(|k| resonance_spectrum_massless(&sys, k).unwrap().energy_re).collect();
    for w in levels.windows(2) {
        assert!(rel_err(w[1] / w[0], (-0.5 / sigma).exp()) < 1e-12);
    }
    for lvl in &levels {
        assert!(*lvl < 0.0);
    }

    let c = 3.0f64;
    let shifted = CoulombSystem::massless(0.6, sigma * c.ln()).unwrap();
    for k in 0..4 {
        let a = resonance_spectrum_massless(&sys, k).unwrap().energy_re;
        let b = resonance_spectrum_massless(&shifted, k).unwrap().energy_re;
        assert!(rel_err(b, c * a) < 1e-12);
    }
}

#[test]
fn resonance_reference_value() {
    let a = 0.6;
    let sys = CoulombSystem::massless(a, 0.0).unwrap();
    let sigma = 0.11f64.sqrt();
    let tau = 0.5 / a + digamma_series(Complex64::new(0.0, a), 200_000).im + 0.5 * PI;
    assert!((resonance_tau(a).unwrap() - tau).abs() < 1e-10);
    assert!(tau > PI);
    let want = -tau.cos().abs() * (PI / (PI * a).tanh() / (2.0 * a)).exp();
    let lvl = resonance_spectrum_massless(&sys, 0).unwrap();
    assert!(rel_err(lvl.energy_re, want) < 1e-10);
    assert!(rel_err(lvl.width, tau.tan().abs() * want.abs()) < 1e-10);
    assert_eq!(lvl.kind, SpectrumKind::Resonance);
    assert!(sigma > planar_vacuum::dirac_coulomb::SHARP_RESONANCE_SIGMA);
    assert!(resonance_spectrum_massless(&CoulombSystem::massless(0.3, 0.0).unwrap(), 0).is_err());
    assert!(resonance_spectrum_massless(&massive(0.6), 0).is_err());
}

#[test]
fn dived_resonance_root_and_monotone_branch() {
    let mut prev: Option<f64> = None;
    let mut found = 0;
    for i in 1..40 {
        let theta = PI * i as f64 / 40.0;
        let sys = CoulombSystem::new(0.52, 0.0, 1.0, theta, 1.0).unwrap();
        match solve_dived_resonance(&sys) {
            Ok(d) => {
                found += 1;
                assert!(d.residual < 1e-10);
                assert!(d.level.energy_re < -1.0);
                assert!((d.level.energy_re + 1.0 + d.epsilon).abs() < 1e-12);
                if let Some(p) = prev {
                    assert!(d.epsilon > p, "theta={theta}");
                }
                prev = Some(d.epsilon);
            }
            Err(Error::NoRoot { .. }) => {}
            Err(other) => panic!("theta={theta}: {other}"),
        }
    }
    assert!(found >= 2);
}

#[test]
fn dived_resonance_sharp_regime() {
    let a = 0.52;
    let bound = 2.0 * PI * a * a / (1e6f64.ln()).powi(2);
    for eps in [bound * 0.5, bound * 0.99] {
        let w = planar_vacuum::massive_polarization::resonance_width(a, 1.0, eps).unwrap();
        assert!(w < 1e-6);
    }
    let w = planar_vacuum::massive_polarization::resonance_width(a, 1.0, 1e-4).unwrap();
    let want = (-(2.0 * PI * 0.2704 * 1e4f64).sqrt()).exp();
    assert!(rel_err(w, want) < 1e-12);
}
