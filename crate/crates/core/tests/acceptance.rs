//! Acceptance criteria, one line each: `PASS`/`FAIL`, the criterion, the
//! measured quantities and the wall time. Exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use rayleigh_core::disk_spectrum::{bessel_zero_power_sum, disk_power_sum, disk_sum_l2_closed_form, sigma};
use rayleigh_core::eig_bounds::{bound_ratio_pair, bound_root_pair, converge_lambda0};
use rayleigh_core::eigen_spectrum::{boundary_residual, normalization_check, Spectrum};
use rayleigh_core::exact_rayleigh::{rayleigh_bernoulli, rayleigh_newton, rayleigh_recursion};
use rayleigh_core::numeric::format_rational;
use rayleigh_core::spectral_oracles::{
    cot_root_sum, direct_sum, iterated_kernel_diag2_coefficients, nystrom_trace_power, odd_mode_sum,
    polynomial_integral, tan_root_sum,
};
use rayleigh_core::{Error, Result};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<(bool, String)>,
}

fn exact_values() -> Result<(bool, String)> {
    let t = rayleigh_recursion(5)?;
    let expected = [r(0, 1), r(1, 24), r(-1, 240), r(41, 40320), r(-107, 725760)];
    let shown: Vec<_> = t.values().iter().map(format_rational).collect();
    Ok((t.values() == expected, shown.join(", ")))
}

fn three_methods() -> Result<(bool, String)> {
    let a = rayleigh_recursion(12)?;
    let b = rayleigh_bernoulli(12)?;
    let c = rayleigh_newton(12)?;
    let ok = a.same_values(&b) && a.same_values(&c);
    Ok((ok, format!("p <= 12, exact equality: {ok}")))
}

fn trace_identity() -> Result<(bool, String)> {
    let mut first_zero = true;
    for n in [16, 100, 1000, 4096] {
        first_zero &= nystrom_trace_power(n, 1)?.value == 0.0;
    }
    let two = nystrom_trace_power(4096, 2)?;
    let three = nystrom_trace_power(4096, 3)?;
    let ok = first_zero && two.abs_err <= 1e-4 && three.abs_err <= 1e-4;
    Ok((ok, format!("tr1 = 0: {first_zero}; N=4096 err p=2 {:.2e}, p=3 {:.2e}", two.abs_err, three.abs_err)))
}

fn direct_sums() -> Result<(bool, String)> {
    let two = direct_sum(2, 1_000_000)?;
    let three = direct_sum(3, 10_000)?;
    let bound = two.tail_bound.expect("direct sums carry a bound");
    let ok = two.abs_err <= bound && bound <= 2e-7 && three.abs_err <= 1e-9;
    Ok((ok, format!("p=2 err {:.2e} <= bound {:.2e}; p=3 err {:.2e}", two.abs_err, bound, three.abs_err)))
}

fn secular_constants() -> Result<(bool, String)> {
    let s = Spectrum::new()?;
    let c0 = s.eigenfunction(0)?.normalization;
    let rounded = |x: f64, d: i32| (x * 10f64.powi(d)).round() / 10f64.powi(d);
    let ok =
        rounded(s.alpha(), 8) == 1.199_678_64 && rounded(s.lambda0(), 6) == -5.756_915 && rounded(c0, 7) == 0.781_259_8;
    Ok((ok, format!("alpha {:.10}, lambda0 {:.8}, C0 {:.9}", s.alpha(), s.lambda0(), c0)))
}

fn boundary_conditions() -> Result<(bool, String)> {
    let mut worst_res: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for n in 0..=50 {
        let (a, b) = boundary_residual(n)?;
        worst_res = worst_res.max(a.abs()).max(b.abs());
        worst_norm = worst_norm.max((normalization_check(n, 64)? - 1.0).abs());
    }
    let ok = worst_res < 1e-9 && worst_norm <= 1e-9;
    Ok((ok, format!("max residual {worst_res:.2e}, max |norm - 1| {worst_norm:.2e}")))
}

fn partial_sums() -> Result<(bool, String)> {
    let odd = odd_mode_sum(1, 1_000_000)?;
    let alpha = Spectrum::new()?.alpha();
    let cot = cot_root_sum(1, 1_000_000)?;
    let e1 = (odd.value - 0.125).abs();
    let e2 = (cot.value - (alpha.powi(-2) - 0.5)).abs();
    Ok((e1 <= 2e-7 && e2 <= 2e-6, format!("odd modes err {e1:.2e}; sum x_m^-2 err {e2:.2e}")))
}

fn euler_rayleigh() -> Result<(bool, String)> {
    let lambda0 = Spectrum::new()?.lambda0();
    let table = rayleigh_recursion(41)?;
    let mut contained = true;
    let mut tightening = true;
    let mut prev = f64::INFINITY;
    for m in 1..=10 {
        let root = bound_root_pair(m, &table)?;
        let ratio = bound_ratio_pair(m, &table)?;
        contained &= root.contains(lambda0) && ratio.contains(lambda0);
        tightening &= ratio.width() < prev;
        prev = ratio.width();
    }
    let (est, pair) = converge_lambda0(1e-3, 20, &table)?;
    let agree = (est - lambda0).abs() <= 1e-3;
    Ok((
        contained && tightening && agree,
        format!("contained {contained}, tightening {tightening}, converged m={} est {est:.6}", pair.m),
    ))
}

fn reference_sums() -> Result<(bool, String)> {
    let one = tan_root_sum(1, 1_000_000)?;
    let two = tan_root_sum(2, 1_000)?;
    let ok = one.abs_err <= 2e-7 && two.abs_err <= 1e-9;
    Ok((ok, format!("1/10 err {:.2e}; 1/350 err {:.2e}", one.abs_err, two.abs_err)))
}

fn disk_case() -> Result<(bool, String)> {
    let base = sigma(1, 0)? == r(1, 4);
    let closed = (0..=20i64).all(|nu| sigma(2, nu as usize).unwrap() == r(1, 16 * (nu + 1) * (nu + 1) * (nu + 2)));
    let d2 = disk_power_sum(2, 1e-11)?;
    let d2_err = (d2.value - disk_sum_l2_closed_form()).abs();
    let divergent = matches!(disk_power_sum(1, 1e-10), Err(Error::Divergent));
    let oracle = bessel_zero_power_sum(0, 2, 500)?;
    let oracle_err = (oracle.value - sigma(2, 0)?.to_f64().unwrap()).abs();
    let ok = base && closed && d2_err <= 1e-10 && divergent && oracle_err <= oracle.tail_bound;
    Ok((
        ok,
        format!(
            "sigma2(0)=1/4 {base}; sigma4 closed form {closed}; l=2 err {d2_err:.2e}; l=1 divergent {divergent}; \
             oracle err {oracle_err:.2e} <= {:.2e}",
            oracle.tail_bound
        ),
    ))
}

fn k2_integral() -> Result<(bool, String)> {
    let integral = polynomial_integral(&iterated_kernel_diag2_coefficients());
    // The integrand as it is commonly printed, 1/2 - x/4 + x^2/4, integrates to 11/24;
    // the recomputed constant term is 1/12.
    let printed = polynomial_integral(&[r(1, 2), r(-1, 4), r(1, 4)]);
    let value = integral.to_f64().unwrap();
    let ok = integral == r(1, 24) && (value - 1.0 / 24.0).abs() <= 1e-12 && printed == r(11, 24);
    Ok((
        ok,
        format!("integral = {} (printed integrand gives {})", format_rational(&integral), format_rational(&printed)),
    ))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, title: "exact Rayleigh values", limit: secs(1), run: exact_values },
        Criterion { id: 2, title: "three exact methods agree", limit: secs(5), run: three_methods },
        Criterion { id: 3, title: "Nystrom trace identity", limit: secs(60), run: trace_identity },
        Criterion { id: 4, title: "direct-sum oracle", limit: secs(30), run: direct_sums },
        Criterion { id: 5, title: "secular constants", limit: secs(1), run: secular_constants },
        Criterion { id: 6, title: "boundary conditions and normalization", limit: None, run: boundary_conditions },
        Criterion { id: 7, title: "partial-sum identities", limit: None, run: partial_sums },
        Criterion { id: 8, title: "Euler-Rayleigh bounds", limit: None, run: euler_rayleigh },
        Criterion { id: 9, title: "tan x = x reference sums", limit: None, run: reference_sums },
        Criterion { id: 10, title: "disk case", limit: None, run: disk_case },
        Criterion { id: 11, title: "K2 diagonal integral erratum guard", limit: None, run: k2_integral },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let (passed, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = c.limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "{} criterion {:>2}: {} | {} | {:.2}s{}",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            detail,
            elapsed.as_secs_f64(),
            limit
        );
        if !passed {
            failures += 1;
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failures, failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
