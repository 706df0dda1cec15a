//! Small numerical building blocks shared by the oracles: compensated
//! summation, Gauss–Legendre panels and conversions between `f64` and exact
//! rationals.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for t in iter {
            acc.add(t);
        }
        acc
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gauss_legendre_16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Composite 16-point Gauss–Legendre quadrature of `f` over `[a, b]` with
/// `panels` equal panels.
pub fn composite_gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre_16();
    let h = (b - a) / panels as f64;
    let mut acc = CompensatedSum::new();
    for k in 0..panels {
        let left = a + k as f64 * h;
        let mid = left + 0.5 * h;
        for (x, w) in nodes.iter().zip(weights) {
            acc.add(0.5 * h * w * f(mid + 0.5 * h * x));
        }
    }
    acc.value()
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `|value - reference|` computed exactly and rounded once.
pub fn exact_abs_diff(value: f64, reference: &BigRational) -> f64 {
    match BigRational::from_float(value) {
        Some(v) => rational_to_f64(&(v - reference).abs()),
        None => f64::INFINITY,
    }
}

/// Positive real `q`-th root of a positive rational, correct to about
/// `digits` significant decimal digits before the final rounding to `f64`.
///
/// The root is formed from an exact integer root of the rational scaled by
/// `10^(digits·q)`, so no intermediate floating-point error enters.
pub fn rational_nth_root(r: &BigRational, q: u32, digits: u32) -> f64 {
    assert!(q >= 1);
    assert!(r.is_positive(), "root of a non-positive rational");
    // Shift the magnitude so the integer root carries `digits` significant digits.
    let num_digits = r.numer().to_string().len() as i64;
    let den_digits = r.denom().to_string().len() as i64;
    let magnitude = num_digits - den_digits;
    let target = digits as i64 * q as i64;
    let shift = target - magnitude + q as i64;
    // Round the shift up to a multiple of q so the root of 10^shift is exact.
    let shift = ((shift + q as i64 - 1).div_euclid(q as i64)) * q as i64;
    let ten = BigInt::from(10u32);
    let (scaled_num, scaled_den) = if shift >= 0 {
        (r.numer() * num_traits::pow(ten.clone(), shift as usize), r.denom().clone())
    } else {
        (r.numer().clone(), r.denom() * num_traits::pow(ten.clone(), (-shift) as usize))
    };
    let integer = &scaled_num / &scaled_den;
    let root = integer.nth_root(q);
    let exponent = shift / q as i64;
    let scale = if exponent >= 0 {
        BigRational::new(BigInt::one(), num_traits::pow(ten, exponent as usize))
    } else {
        BigRational::from_integer(num_traits::pow(ten, (-exponent) as usize))
    };
    let approx = BigRational::from_integer(root) * scale;
    if approx.is_zero() {
        0.0
    } else {
        rational_to_f64(&approx)
    }
}

/// `∫_m^∞ (a(t - shift))^{-q} dt` for `q > 1`, `m > shift`; majorizes
/// `Σ_{k>m} (a(k - shift))^{-q}`.
pub fn integral_tail(a: f64, shift: f64, q: f64, m: f64) -> f64 {
    1.0 / (a.powf(q) * (q - 1.0) * (m - shift).powf(q - 1.0))
}

/// Canonical `num/den` rendering used in reports.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
