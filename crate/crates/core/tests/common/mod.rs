//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library; every routine is a slow, direct
//! evaluation with double-double accumulation where cancellation matters.
#![allow(dead_code, clippy::excessive_precision)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub const EULER: f64 = 0.577_215_664_901_532_860_6;

/// Double-double accumulator (TwoSum on hi/lo).
#[derive(Clone, Copy, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    pub fn add(&mut self, x: f64) {
        let s = self.hi + x;
        let bp = s - self.hi;
        let err = (self.hi - (s - bp)) + (x - bp);
        let lo = self.lo + err;
        self.hi = s + lo;
        self.lo = lo - (self.hi - s);
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Default)]
pub struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Lanczos gamma (g = 7, 9 terms) for complex arguments, with reflection.
pub fn lanczos_gamma(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return PI / (s * lanczos_gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, c) in COEF.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// psi(z) = -C + sum_{n>=0} (1/(n+1) - 1/(n+z)), truncated at `n_terms` with an
/// Euler-Maclaurin tail (integral, half endpoint, first derivative term).
pub fn digamma_series(z: Complex64, n_terms: usize) -> Complex64 {
    let mut acc = DdComplex::default();
    for n in (0..n_terms).rev() {
        let nf = n as f64;
        acc.add(Complex64::new(1.0 / (nf + 1.0), 0.0) - 1.0 / (z + nf));
    }
    let big = n_terms as f64;
    let f = |x: f64| Complex64::new(1.0 / (x + 1.0), 0.0) - 1.0 / (z + x);
    let fp = |x: f64| Complex64::new(-1.0 / ((x + 1.0) * (x + 1.0)), 0.0) + 1.0 / ((z + x) * (z + x));
    let integral = ((z + big) / (big + 1.0)).ln();
    let tail = integral + 0.5 * f(big) - fp(big) / 12.0;
    acc.add(tail);
    acc.value() - EULER
}

/// Confluent hypergeometric 1F1(a; b; x) by direct power series; also returns
/// the sum of term moduli as a cancellation measure.
pub fn hyp1f1_series(a: Complex64, b: Complex64, x: f64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = DdComplex::default();
    let mut abs = Dd::default();
    acc.add(term);
    abs.add(1.0);
    for n in 0..5000 {
        let nf = n as f64;
        term = term * (a + nf) / (b + nf) * (x / (nf + 1.0));
        acc.add(term);
        abs.add(term.norm());
        if term.norm() < 1e-18 * acc.value().norm() && nf > x.abs() {
            break;
        }
    }
    (acc.value(), abs.value())
}

/// Whittaker M from whichever of the direct series
/// e^{-x/2} x^{mu+1/2} 1F1(1/2+mu-kappa; 1+2mu; x) or its Kummer transform
/// e^{x/2} x^{mu+1/2} 1F1(1/2+mu+kappa; 1+2mu; -x) cancels less.
pub fn whittaker_m_oracle(kappa: Complex64, mu: Complex64, x: f64) -> Complex64 {
    let pre = Complex64::new(x, 0.0).powc(mu + 0.5);
    let (d, d_abs) = hyp1f1_series(mu - kappa + 0.5, 2.0 * mu + 1.0, x);
    let (t, t_abs) = hyp1f1_series(mu + kappa + 0.5, 2.0 * mu + 1.0, -x);
    if d_abs / d.norm() <= t_abs / t.norm() {
        pre * (-0.5 * x).exp() * d
    } else {
        pre * (0.5 * x).exp() * t
    }
}

/// Whittaker W for real parameters via the Laplace integral
/// W = x^{mu+1/2} e^{-x/2}/Gamma(mu-kappa+1/2) int_0^inf e^{-xt} t^{mu-kappa-1/2} (1+t)^{mu+kappa-1/2} dt,
/// integrated with the exp-sinh rule t = exp(pi/2 sinh s).
pub fn whittaker_w_oracle(kappa: f64, mu: f64, x: f64) -> f64 {
    let p = mu - kappa - 0.5;
    let q = mu + kappa - 0.5;
    let h = 1.0 / 64.0;
    let mut acc = Dd::default();
    let mut k: i64 = -(8.0 / h) as i64;
    while (k as f64) * h <= 8.0 {
        let s = k as f64 * h;
        let arg = 0.5 * PI * s.sinh();
        let t = arg.exp();
        let dt = t * 0.5 * PI * s.cosh();
        let v = (-x * t + p * t.ln() + q * t.ln_1p()).exp() * dt;
        if v.is_finite() {
            acc.add(v * h);
        }
        k += 1;
    }
    let norm = lanczos_gamma(Complex64::new(mu - kappa + 0.5, 0.0)).re;
    x.powf(mu + 0.5) * (-0.5 * x).exp() * acc.value() / norm
}

/// I_nu(x) = sum_k (x/2)^{2k+nu}/(k! Gamma(k+nu+1)), at least `min_terms` terms.
pub fn bessel_i_series(nu: f64, x: f64, min_terms: usize) -> f64 {
    let mut term = (0.5 * x).powf(nu) / lanczos_gamma(Complex64::new(nu + 1.0, 0.0)).re;
    let mut acc = Dd::default();
    let mut k = 0usize;
    loop {
        acc.add(term);
        k += 1;
        term *= 0.25 * x * x / (k as f64 * (k as f64 + nu));
        if k >= min_terms && term.abs() < 1e-20 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// pi/(y sinh(pi y)) = |Gamma(i y)|^2.
pub fn gamma_imag_modulus_sq(y: f64) -> f64 {
    PI / (y * (PI * y).sinh())
}

/// Five-point second derivative of a complex function.
pub fn second_derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

/// Five-point first derivative.
pub fn first_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

pub fn rel_err_c(got: Complex64, want: Complex64) -> f64 {
    if want.norm() == 0.0 {
        got.norm()
    } else {
        (got - want).norm() / want.norm()
    }
}

/// psi'(x) for x > 0: direct sum of 1/(x+n)^2 for n < 64, Euler-Maclaurin tail.
pub fn trigamma_oracle(x: f64) -> f64 {
    let n = 64;
    let mut acc = Dd::default();
    for i in (0..n).rev() {
        let y = x + i as f64;
        acc.add(1.0 / (y * y));
    }
    let y = x + n as f64;
    acc.add(1.0 / y + 0.5 / (y * y) + 1.0 / (6.0 * y.powi(3)) - 1.0 / (30.0 * y.powi(5)) + 1.0 / (42.0 * y.powi(7)));
    acc.value()
}

/// Linear-in-a charge coefficient (2a/pi) sum_l sum_pm g(l + 1/2 +- alpha),
/// g(x) = x psi'(x) - 1 - 1/(2x), summed directly to `l_max` with an
/// Euler-Maclaurin tail from g ~ 1/(6x^2) - 1/(30x^4) + 1/(42x^6).
pub fn q1_oracle(a: f64, alpha: f64, l_max: usize) -> f64 {
    let g = |x: f64| x * trigamma_oracle(x) - 1.0 - 0.5 / x;
    let mut acc = Dd::default();
    for l in (0..l_max).rev() {
        let y = l as f64 + 0.5;
        acc.add(g(y + alpha));
        acc.add(g(y - alpha));
    }
    for sgn in [1.0, -1.0] {
        let y = l_max as f64 + 0.5 + sgn * alpha;
        let asym = |x: f64| 1.0 / (6.0 * x * x) - 1.0 / (30.0 * x.powi(4)) + 1.0 / (42.0 * x.powi(6));
        let dasym = |x: f64| -1.0 / (3.0 * x.powi(3)) + 4.0 / (30.0 * x.powi(5));
        let integral = 1.0 / (6.0 * y) - 1.0 / (90.0 * y.powi(3)) + 1.0 / (210.0 * y.powi(5));
        acc.add(integral + 0.5 * asym(y) - dasym(y) / 12.0);
    }
    2.0 * a / PI * acc.value()
}

/// Tanh-sinh quadrature on [lo, hi] with step h = 2^-level over |t| <= 4.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, level: u32) -> f64 {
    let h = 0.5f64.powi(level as i32);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut acc = Dd::default();
    let n = (4.0 / h) as i64;
    for k in -n..=n {
        let t = k as f64 * h;
        let s = 0.5 * PI * t.sinh();
        let x = s.tanh();
        let w = 0.5 * PI * t.cosh() / (s.cosh() * s.cosh());
        // distance to the nearer endpoint without cancellation
        let d = half / (s.abs().exp() * s.abs().cosh());
        let point = if t < 0.0 { lo + d } else if t > 0.0 { hi - d } else { mid + half * x };
        if point > lo && point < hi {
            let v = f(point) * w;
            if v.is_finite() {
                acc.add(v);
            }
        }
    }
    acc.value() * half * h
}

/// int_1^inf e^{-2 mr x}/(x^3 sqrt(x^2-1)) dx through x = sec u:
/// int_0^{pi/2} cos^2 u e^{-2 mr sec u} du.
pub fn massive_integral_oracle(mr: f64) -> f64 {
    tanh_sinh(|u| { let c = u.cos(); c * c * (-2.0 * mr / c).exp() }, 0.0, 0.5 * PI, 8)
}
