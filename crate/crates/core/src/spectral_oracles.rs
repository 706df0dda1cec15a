//! Numerical oracles for the exact sums `A_p`.
//!
//! - Nyström: traces of powers of the midpoint discretization of
//!   `K(x, y) = -|x - y|/2`.
//! - Direct sums over the three eigenvalue families, truncated after `M` terms
//!   per family, with a certified bound on the remainder.
//! - Reference sums over the positive roots of `tan x = x`.
//!
//! Every report compares against an exact rational reference; `abs_err` is
//! formed in exact arithmetic from the floating estimate.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::eigen_spectrum::{cot_root_tol, Spectrum};
use crate::exact_rayleigh::{rayleigh_recursion, zeta_even};
use crate::numeric::{exact_abs_diff, integral_tail, rational_to_f64, CompensatedSum};
use crate::secular_roots::{self, RootResult, SecularEquation};
use crate::{Error, Result};

/// Estimates whose magnitude falls below this are flagged as underflowing.
const UNDERFLOW_LEVEL: f64 = 1e-280;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleMethod {
    Nystrom,
    DirectSum,
    ClosedFormK2,
    TanRootSum,
}

impl OracleMethod {
    pub fn name(self) -> &'static str {
        match self {
            OracleMethod::Nystrom => "nystrom",
            OracleMethod::DirectSum => "direct",
            OracleMethod::ClosedFormK2 => "closed-form-k2",
            OracleMethod::TanRootSum => "tan-root-sum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub method: OracleMethod,
    pub p: usize,
    pub value: f64,
    pub reference: BigRational,
    pub abs_err: f64,
    /// Certified bound on `|value - reference|` when the method provides one:
    /// truncated remainder plus a floating-point allowance.
    pub tail_bound: Option<f64>,
    pub underflow: bool,
}

impl OracleReport {
    fn new(method: OracleMethod, p: usize, value: f64, reference: BigRational, tail_bound: Option<f64>) -> Self {
        let abs_err = exact_abs_diff(value, &reference);
        let underflow = value.abs() < UNDERFLOW_LEVEL && !reference.is_zero();
        Self { method, p, value, reference, abs_err, tail_bound, underflow }
    }

    /// Whether `abs_err` lies within the certified bound (vacuously true when
    /// the method gives none).
    pub fn within_bound(&self) -> bool {
        self.tail_bound.is_none_or(|b| self.abs_err <= b)
    }
}

fn reference_sum(p: usize) -> Result<BigRational> {
    let table = rayleigh_recursion(p)?;
    Ok(table.get(p).cloned().expect("table holds A_p"))
}

pub fn kernel_eval(x: f64, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::Domain(format!("({x}, {y}) lies outside the unit square")));
    }
    Ok(-(x - y).abs() / 2.0)
}

/// Midpoint grid on `[0, 1]`: nodes `(i + 1/2)/N`, weight `1/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromGrid {
    nodes: Vec<f64>,
    weight: f64,
}

impl NystromGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Nystrom grid needs at least one node".into()));
        }
        let h = 1.0 / n as f64;
        let nodes = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
        Ok(Self { nodes, weight: h })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Matrix entry `w·K(x_i, x_j)`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.weight * -(self.nodes[i] - self.nodes[j]).abs() / 2.0
    }

    /// `M v` in `O(N)`.
    ///
    /// On a uniform grid `M_ij = -|i - j| h²/2`, so the product reduces to the
    /// two one-sided moment sums `Σ_{j<i} (i - j) v_j` and `Σ_{j>i} (j - i) v_j`,
    /// each a running sum of running sums.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        assert_eq!(v.len(), n);
        let scale = -0.5 * self.weight * self.weight;
        let mut out = vec![0.0; n];

        let mut prefix = CompensatedSum::new();
        let mut left = CompensatedSum::new();
        for i in 0..n {
            // left = Σ_{j<i} (i - j) v_j, prefix = Σ_{j<i} v_j
            out[i] = left.value();
            prefix.add(v[i]);
            left.add(prefix.value());
        }
        let mut suffix = CompensatedSum::new();
        let mut right = CompensatedSum::new();
        for i in (0..n).rev() {
            out[i] = scale * (out[i] + right.value());
            suffix.add(v[i]);
            right.add(suffix.value());
        }
        out
    }

    /// Column `j` of `M`.
    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.len()).map(|i| self.entry(i, j)).collect()
    }

    /// `tr(M^p)` with compensated accumulation.
    ///
    /// `M` is symmetric, so with `c_i = M^h e_i`, `tr(M^{2h}) = Σ_i c_i·c_i` and
    /// `tr(M^{2h+1}) = Σ_i c_i·(M c_i)`.
    pub fn trace_power(&self, p: usize) -> f64 {
        assert!(p >= 1);
        if p == 1 {
            return (0..self.len()).map(|i| self.entry(i, i)).collect::<CompensatedSum>().value();
        }
        let half = p / 2;
        let mut acc = CompensatedSum::new();
        for i in 0..self.len() {
            let mut col = self.column(i);
            for _ in 1..half {
                col = self.apply(&col);
            }
            if p.is_multiple_of(2) {
                for x in &col {
                    acc.add(x * x);
                }
            } else {
                let image = self.apply(&col);
                for (x, y) in col.iter().zip(&image) {
                    acc.add(x * y);
                }
            }
        }
        acc.value()
    }
}

/// Nyström estimate of `A_p`: `tr((1/N)[K(x_i, x_j)])^p` on the midpoint grid.
pub fn nystrom_trace_power(n: usize, p: usize) -> Result<OracleReport> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("Nystrom grid needs N >= 16, got {n}")));
    }
    if p == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let grid = NystromGrid::new(n)?;
    let value = grid.trace_power(p);
    Ok(OracleReport::new(OracleMethod::Nystrom, p, value, reference_sum(p)?, None))
}

/// `(1/N²) Σ_ij K(x_i, x_j)²` straight from the kernel; equals the `p = 2`
/// Nyström trace on the same grid.
pub fn hilbert_schmidt_quadrature(n: usize) -> Result<f64> {
    let grid = NystromGrid::new(n)?;
    let w = grid.weight();
    let mut acc = CompensatedSum::new();
    for &x in grid.nodes() {
        for &y in grid.nodes() {
            let k = kernel_eval(x, y)?;
            acc.add(w * w * k * k);
        }
    }
    Ok(acc.value())
}

/// Monomial coefficients (constant term first) of `K_2(x, x) = ∫_0^1 K(x, t)² dt`.
///
/// `∫_0^1 (x - t)²/4 dt = (x² - x + 1/3)/4`, i.e. `1/12 - x/4 + x²/4`.
pub fn iterated_kernel_diag2_coefficients() -> [BigRational; 3] {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    // (1/4)·∫(x² - 2xt + t²) dt over t ∈ [0, 1]: moments ∫1 = 1, ∫t = 1/2, ∫t² = 1/3
    let quarter = r(1, 4);
    [&quarter * r(1, 3), &quarter * r(-2, 1) * r(1, 2), quarter * r(1, 1)]
}

/// `K_2(x, x) = (x³ + (1 - x)³)/12`.
pub fn iterated_kernel_diag2(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} lies outside [0, 1]")));
    }
    let y = 1.0 - x;
    Ok((x * x * x + y * y * y) / 12.0)
}

/// Exact `∫_0^1 Σ c_k x^k dx`.
pub fn polynomial_integral(coeffs: &[BigRational]) -> BigRational {
    coeffs.iter().enumerate().map(|(k, c)| c / BigRational::from_integer(BigInt::from(k + 1))).sum()
}

/// `∫_0^1 K_2(x, x) dx` by exact integration of the closed form.
pub fn closed_form_k2_report() -> Result<OracleReport> {
    let exact = polynomial_integral(&iterated_kernel_diag2_coefficients());
    let value = rational_to_f64(&exact);
    Ok(OracleReport::new(OracleMethod::ClosedFormK2, 2, value, reference_sum(2)?, Some(0.0)))
}

/// A truncated series with a certified bound on what was left out, including
/// floating-point allowance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Running sum of positive or signed terms, tracking an absolute error
/// allowance for each term.
#[derive(Default)]
struct CertifiedAccumulator {
    sum: CompensatedSum,
    magnitude: f64,
    allowance: f64,
}

impl CertifiedAccumulator {
    fn add(&mut self, term: f64, relative_error: f64) {
        self.sum.add(term);
        self.magnitude += term.abs();
        self.allowance += term.abs() * relative_error;
    }

    fn finish(&self, truncation: f64, terms: usize) -> PartialSum {
        PartialSum {
            value: self.sum.value(),
            tail_bound: truncation + self.allowance + 4.0 * f64::EPSILON * self.magnitude,
            terms,
        }
    }
}

/// `Σ_{m=1}^{M} ((2m - 1)π)^{-2p}`, i.e. the odd cosine modes `λ_{2m-1}^{-p}`.
pub fn odd_mode_sum(p: usize, terms: usize) -> Result<PartialSum> {
    if p == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let mut acc = CertifiedAccumulator::default();
    let q = 2 * p as i32;
    let eval_err = (2 * p + 4) as f64 * f64::EPSILON;
    for m in 1..=terms {
        acc.add(((2 * m - 1) as f64 * PI).powi(-q), eval_err);
    }
    let truncation = if terms == 0 {
        // (1 - 2^{-2p}) ζ(2p) / π^{2p}
        rational_to_f64(&zeta_even(p)?) * (1.0 - 0.25f64.powi(p as i32))
    } else {
        // ∫_M^∞ ((2t - 1)π)^{-2p} dt
        integral_tail(2.0 * PI, 0.5, q as f64, terms as f64)
    };
    Ok(acc.finish(truncation, terms))
}

fn root_power_sum(roots: &[RootResult], eq: SecularEquation, p: usize, scale: f64, truncation: f64) -> PartialSum {
    let q = 2 * p as i32;
    let eval_err = (2 * p + 4) as f64 * f64::EPSILON;
    let mut acc = CertifiedAccumulator::default();
    for r in roots {
        let rel = q as f64 * r.position_error(eq) / r.value + eval_err;
        acc.add(scale * r.value.powi(-q), rel);
    }
    acc.finish(truncation, roots.len())
}

fn cot_truncation(p: usize, terms: usize) -> f64 {
    let q = 2.0 * p as f64;
    if terms == 0 {
        // x_m > (m - 1/2)π: first term below (π/2)^{-2p}, the rest below the integral from 1
        (PI / 2.0).powf(-q) + integral_tail(PI, 0.5, q, 1.0)
    } else {
        // x_m > (m - 1/2)π
        integral_tail(PI, 0.5, q, terms as f64)
    }
}

/// `S_{2p}` truncated: `Σ_{m=1}^{M} x_m^{-2p}` over roots of `cot x = -x`.
pub fn cot_root_sum(p: usize, terms: usize) -> Result<PartialSum> {
    if p == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let roots = secular_roots::enumerate_roots(SecularEquation::CotNegX, terms, cot_root_tol(terms))?;
    Ok(root_power_sum(&roots, SecularEquation::CotNegX, p, 1.0, cot_truncation(p, terms)))
}

/// Direct estimate of `A_p` for `p ≥ 2`:
/// `λ_0^{-p} + Σ_{m≤M} λ_{2m-1}^{-p} + Σ_{m≤M} λ_{2m}^{-p}`.
pub fn direct_sum(p: usize, terms: usize) -> Result<OracleReport> {
    direct_sum_with(&Spectrum::new()?, p, terms)
}

pub fn direct_sum_with(spectrum: &Spectrum, p: usize, terms: usize) -> Result<OracleReport> {
    if p < 2 {
        return Err(Error::InvalidArgument(
            "A_1 is only conditionally summable; use the exact identity A_1 = 0".into(),
        ));
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("direct sum needs M >= 1".into()));
    }
    let q = p as i32;
    let alpha = spectrum.alpha();
    let alpha_root = RootResult {
        value: alpha,
        bracket: SecularEquation::CothFixedPoint.bracket(1)?,
        residual: SecularEquation::CothFixedPoint.residual(alpha),
        iterations: 0,
    };
    let alpha_err = alpha_root.position_error(SecularEquation::CothFixedPoint) / alpha;
    let negative = spectrum.lambda0().powi(-q);
    let negative_err = 2.0 * p as f64 * alpha_err + (2 * p + 4) as f64 * f64::EPSILON;

    let odd = odd_mode_sum(p, terms)?;
    let roots = secular_roots::enumerate_roots(SecularEquation::CotNegX, terms, cot_root_tol(terms))?;
    // λ_{2m}^{-p} = 4^{-p} x_m^{-2p}
    let four_p = 0.25f64.powi(q);
    let even = root_power_sum(&roots, SecularEquation::CotNegX, p, four_p, four_p * cot_truncation(p, terms));

    let mut total = CompensatedSum::new();
    total.add(negative);
    total.add(odd.value);
    total.add(even.value);
    let value = total.value();
    let bound = negative.abs() * negative_err
        + odd.tail_bound
        + even.tail_bound
        + 4.0 * f64::EPSILON * (negative.abs() + odd.value.abs() + even.value.abs());
    Ok(OracleReport::new(OracleMethod::DirectSum, p, value, reference_sum(p)?, Some(bound)))
}

/// Exact `Σ_k x_k^{-2p}` over the positive roots of `tan x = x`, for `p ∈ {1, 2}`.
pub fn tan_root_reference(p: usize) -> Result<BigRational> {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match p {
        1 => Ok(r(1, 10)),
        2 => Ok(r(1, 350)),
        _ => Err(Error::InvalidArgument(format!("tan x = x reference sums cover p = 1, 2; got {p}"))),
    }
}

/// `Σ_{k≤M} x_k^{-2p}` over roots of `tan x = x` against `1/10` (`p = 1`) or
/// `1/350` (`p = 2`).
pub fn tan_root_sum(p: usize, terms: usize) -> Result<OracleReport> {
    let reference = tan_root_reference(p)?;
    let q = 2.0 * p as f64;
    // x_k > kπ
    let truncation = if terms == 0 { rational_to_f64(&zeta_even(p)?) } else { integral_tail(PI, 0.0, q, terms as f64) };
    let tol = cot_root_tol(terms + 1);
    let roots = secular_roots::enumerate_roots(SecularEquation::TanEqX, terms, tol)?;
    let sum = root_power_sum(&roots, SecularEquation::TanEqX, p, 1.0, truncation);
    Ok(OracleReport::new(OracleMethod::TanRootSum, p, sum.value, reference, Some(sum.tail_bound)))
}
