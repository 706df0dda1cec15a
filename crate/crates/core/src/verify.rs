//! End-to-end cross-validation: every computed quantity is checked against an
//! independent route or a known constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::disk_spectrum::{bessel_zero_power_sum, disk_power_sum, disk_sum_l2_closed_form, sigma};
use crate::eig_bounds::{bound_ratio_pair, bound_root_pair, converge_lambda0};
use crate::eigen_spectrum::Spectrum;
use crate::exact_rayleigh::{rayleigh_bernoulli, rayleigh_newton, rayleigh_recursion, NEWTON_MAX_P};
use crate::spectral_oracles::{
    cot_root_sum, direct_sum, iterated_kernel_diag2_coefficients, nystrom_trace_power, odd_mode_sum,
    polynomial_integral, tan_root_sum,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyConfig {
    /// Added to the computed `α` before the eigenfunction checks; nonzero
    /// values must make the boundary check fail.
    pub alpha_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&VerifyConfig) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 11] = [
    ("exact-values", exact_values),
    ("method-agreement", method_agreement),
    ("trace-identity", trace_identity),
    ("direct-sum", direct_sum_check),
    ("secular-constants", secular_constants),
    ("boundary-conditions", boundary_conditions),
    ("partial-sum-identities", partial_sum_identities),
    ("euler-rayleigh-bounds", euler_rayleigh_bounds),
    ("tan-reference-sums", tan_reference_sums),
    ("disk-sums", disk_sums),
    ("k2-diagonal-integral", k2_diagonal_integral),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check in a fixed order. Errors inside a check count as failures.
pub fn run_checks(config: &VerifyConfig) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| match check(config) {
            Ok((passed, detail)) => CheckOutcome { name, passed, detail },
            Err(e) => CheckOutcome { name, passed: false, detail: format!("error: {e}") },
        })
        .collect()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn spectrum(config: &VerifyConfig) -> Result<Spectrum> {
    if config.alpha_perturbation == 0.0 {
        Spectrum::new()
    } else {
        let alpha = Spectrum::new()?.alpha() + config.alpha_perturbation;
        Ok(Spectrum::with_alpha(alpha))
    }
}

fn exact_values(_: &VerifyConfig) -> Result<(bool, String)> {
    let table = rayleigh_recursion(5)?;
    let expected = [r(0, 1), r(1, 24), r(-1, 240), r(41, 40320), r(-107, 725760)];
    let ok = table.values() == expected;
    Ok((ok, format!("A_1..A_5 = {}", join(table.values()))))
}

fn method_agreement(_: &VerifyConfig) -> Result<(bool, String)> {
    let p = NEWTON_MAX_P;
    let a = rayleigh_recursion(p)?;
    let b = rayleigh_bernoulli(p)?;
    let c = rayleigh_newton(p)?;
    let ok = a.same_values(&b) && a.same_values(&c);
    Ok((ok, format!("recursion, bernoulli and newton identical for p <= {p}: {ok}")))
}

fn trace_identity(_: &VerifyConfig) -> Result<(bool, String)> {
    let mut ok = true;
    for n in [16, 64, 257, 1024] {
        ok &= nystrom_trace_power(n, 1)?.value == 0.0;
    }
    let p2 = nystrom_trace_power(4096, 2)?;
    let p3 = nystrom_trace_power(4096, 3)?;
    ok &= p2.abs_err < 1e-4 && p3.abs_err < 1e-4;
    Ok((ok, format!("N=4096: |tr2 - 1/24| = {:.3e}, |tr3 + 1/240| = {:.3e}", p2.abs_err, p3.abs_err)))
}

fn direct_sum_check(_: &VerifyConfig) -> Result<(bool, String)> {
    let two = direct_sum(2, 1_000_000)?;
    let three = direct_sum(3, 10_000)?;
    let bound2 = two.tail_bound.unwrap_or(f64::INFINITY);
    let ok = two.within_bound() && bound2 <= 2e-7 && three.abs_err <= 1e-9;
    Ok((
        ok,
        format!("p=2, M=1e6: err {:.3e} <= bound {:.3e}; p=3, M=1e4: err {:.3e}", two.abs_err, bound2, three.abs_err),
    ))
}

fn secular_constants(config: &VerifyConfig) -> Result<(bool, String)> {
    let s = spectrum(config)?;
    let c0 = s.eigenfunction(0)?.normalization;
    let ok = (s.alpha() - 1.199_678_64).abs() < 5e-9
        && (s.lambda0() + 5.756_915).abs() < 5e-7
        && (c0 - 0.781_259_8).abs() < 5e-8;
    Ok((ok, format!("alpha = {:.12}, lambda0 = {:.12}, C0 = {:.12}", s.alpha(), s.lambda0(), c0)))
}

fn boundary_conditions(config: &VerifyConfig) -> Result<(bool, String)> {
    let s = spectrum(config)?;
    let mut worst_residual: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for n in 0..=50 {
        let f = s.eigenfunction(n)?;
        let (r1, r2) = f.boundary_residual();
        worst_residual = worst_residual.max(r1.abs()).max(r2.abs());
        worst_norm = worst_norm.max((f.norm_squared(64)? - 1.0).abs());
    }
    let ok = worst_residual < 1e-9 && worst_norm < 1e-9;
    Ok((ok, format!("n <= 50: max boundary residual {worst_residual:.3e}, max |norm - 1| {worst_norm:.3e}")))
}

fn partial_sum_identities(_: &VerifyConfig) -> Result<(bool, String)> {
    let m = 1_000_000;
    let odd = odd_mode_sum(1, m)?;
    let odd_err = (odd.value - 0.125).abs();
    let alpha = Spectrum::new()?.alpha();
    let cot = cot_root_sum(1, m)?;
    let cot_err = (cot.value - (1.0 / (alpha * alpha) - 0.5)).abs();
    let ok = odd_err <= 2e-7 && cot_err <= 2e-6;
    Ok((ok, format!("M=1e6: odd modes err {odd_err:.3e}, cot roots err {cot_err:.3e}")))
}

fn euler_rayleigh_bounds(_: &VerifyConfig) -> Result<(bool, String)> {
    let lambda0 = Spectrum::new()?.lambda0();
    let table = rayleigh_recursion(41)?;
    let mut ok = true;
    let mut previous_width = f64::INFINITY;
    for m in 1..=10 {
        let root = bound_root_pair(m, &table)?;
        let ratio = bound_ratio_pair(m, &table)?;
        ok &= root.contains(lambda0) && ratio.contains(lambda0);
        ok &= ratio.width() < previous_width;
        previous_width = ratio.width();
    }
    let (estimate, pair) = converge_lambda0(1e-3, 20, &table)?;
    ok &= (estimate - lambda0).abs() <= 1e-3;
    Ok((ok, format!("m <= 10 contain lambda0; converged at m = {} to {estimate:.9}", pair.m)))
}

fn tan_reference_sums(_: &VerifyConfig) -> Result<(bool, String)> {
    let one = tan_root_sum(1, 1_000_000)?;
    let two = tan_root_sum(2, 1_000)?;
    let ok = one.abs_err <= 2e-7 && two.abs_err <= 1e-9;
    Ok((ok, format!("|S2 - 1/10| = {:.3e}, |S4 - 1/350| = {:.3e}", one.abs_err, two.abs_err)))
}

fn disk_sums(_: &VerifyConfig) -> Result<(bool, String)> {
    let mut ok = sigma(1, 0)? == r(1, 4);
    for nu in 0..=20i64 {
        ok &= sigma(2, nu as usize)? == r(1, 16 * (nu + 1) * (nu + 1) * (nu + 2));
    }
    let d2 = disk_power_sum(2, 1e-12)?;
    let d2_err = (d2.value - disk_sum_l2_closed_form()).abs();
    ok &= d2_err <= 1e-10;
    ok &= matches!(disk_power_sum(1, 1e-10), Err(Error::Divergent));
    let oracle = bessel_zero_power_sum(0, 2, 500)?;
    let s4 = sigma(2, 0)?.to_f64().unwrap_or(f64::NAN);
    let oracle_err = (oracle.value - s4).abs();
    ok &= oracle_err <= oracle.tail_bound;
    Ok((
        ok,
        format!(
            "l=2 sum {:.15} (closed-form err {d2_err:.3e}); l=1 divergent; sigma4(0) oracle err {oracle_err:.3e} <= {:.3e}",
            d2.value, oracle.tail_bound
        ),
    ))
}

fn k2_diagonal_integral(_: &VerifyConfig) -> Result<(bool, String)> {
    let coeffs = iterated_kernel_diag2_coefficients();
    let integral = polynomial_integral(&coeffs);
    let printed = polynomial_integral(&[r(1, 2), r(-1, 4), r(1, 4)]);
    let ok = integral == r(1, 24) && printed != r(1, 24);
    Ok((
        ok,
        format!(
            "integral of K2(x,x) = {}; the form 1/2 - x/4 + x^2/4 would give {}",
            crate::numeric::format_rational(&integral),
            crate::numeric::format_rational(&printed)
        ),
    ))
}

fn join(values: &[BigRational]) -> String {
    values.iter().map(crate::numeric::format_rational).collect::<Vec<_>>().join(", ")
}
