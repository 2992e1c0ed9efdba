use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numerics::{ComplexSum, Sum};
use crate::{Error, Result};

/// Bernoulli numbers B_2, B_4, ..., B_30.
pub const BERNOULLI_2K: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

const LN_2PI: f64 = 1.837_877_066_409_345_5;
const MAX_LEFT_SHIFT: f64 = 1000.0;
const EXP_LIMIT: f64 = 709.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn check_argument(function: &'static str, z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(function, format!("non-finite argument {z}")));
    }
    if is_pole(z) {
        return Err(Error::Pole { function, at: format!("{z}") });
    }
    if z.re < -MAX_LEFT_SHIFT {
        return Err(Error::domain(function, format!("Re z = {} below supported range", z.re)));
    }
    Ok(())
}

fn needs_shift(w: Complex64) -> bool {
    w.re < 10.0 && !(w.re >= 0.0 && w.im.abs() >= 10.0)
}

fn stirling_ln_gamma(w: Complex64) -> Complex64 {
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * LN_2PI;
    let w2inv = (w * w).inv();
    let mut p = w.inv();
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let n = 2.0 * (k + 1) as f64;
        let t = p * (b / (n * (n - 1.0)));
        s += t;
        if t.norm() < 1e-17 * s.norm() {
            break;
        }
        p *= w2inv;
    }
    s
}

/// Principal branch of log Gamma(z), continuous off the non-positive real axis.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_argument("ln_gamma", z)?;
    let mut w = z;
    let mut shift = ComplexSum::new();
    while needs_shift(w) {
        shift.add(w.ln());
        w += 1.0;
    }
    Ok(stirling_ln_gamma(w) - shift.value())
}

/// sin(pi z) with argument reduction on the real part.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let x = z.re - n;
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * x).sin_cos();
    let y = PI * z.im;
    Complex64::new(sign * s * y.cosh(), sign * c * y.sinh())
}

/// Gamma(z), by reflection for Re z < 1/2.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_argument("gamma", z)?;
    if z.re >= 0.5 {
        let lg = ln_gamma(z)?;
        if lg.re > EXP_LIMIT {
            return Err(Error::Overflow { function: "gamma", log_magnitude: lg.re });
        }
        return Ok(lg.exp());
    }
    let lg = ln_gamma(1.0 - z)?;
    let s = sin_pi(z);
    let log_mag = PI.ln() - s.norm().ln() - lg.re;
    if log_mag > EXP_LIMIT {
        return Err(Error::Overflow { function: "gamma", log_magnitude: log_mag });
    }
    Ok(PI / (s * lg.exp()))
}

/// 1/Gamma(z), entire; zero at the non-positive integers.
pub fn rgamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) && z.re >= -MAX_LEFT_SHIFT {
        return Ok(Complex64::new(0.0, 0.0));
    }
    check_argument("rgamma", z)?;
    if z.re >= 0.5 {
        return Ok((-ln_gamma(z)?).exp());
    }
    Ok(sin_pi(z) * ln_gamma(1.0 - z)?.exp() / PI)
}

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_argument("digamma", z)?;
    let mut w = z;
    let mut shift = ComplexSum::new();
    while needs_shift(w) {
        shift.add(w.inv());
        w += 1.0;
    }
    let mut s = w.ln() - 0.5 * w.inv();
    let w2inv = (w * w).inv();
    let mut p = w2inv;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let t = p * (b / (2.0 * (k + 1) as f64));
        s -= t;
        if t.norm() < 1e-17 * s.norm() {
            break;
        }
        p *= w2inv;
    }
    Ok(s - shift.value())
}

/// Trigamma psi'(x) for real x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("trigamma", format!("x = {x} must be positive and finite")));
    }
    let mut w = x;
    let mut shift = Sum::new();
    while w < 10.0 {
        shift.add(1.0 / (w * w));
        w += 1.0;
    }
    let w2inv = 1.0 / (w * w);
    let mut s = Sum::new();
    s.add(1.0 / w);
    s.add(0.5 * w2inv);
    let mut p = w2inv / w;
    for b in BERNOULLI_2K {
        let t = b * p;
        s.add(t);
        if t.abs() < 1e-18 * s.value() {
            break;
        }
        p *= w2inv;
    }
    s.add(shift.value());
    Ok(s.value())
}
