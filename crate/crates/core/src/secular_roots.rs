//! Bracketed root finding for the transcendental equations behind the
//! spectrum.
//!
//! Every root is isolated in an analytically known interval, narrowed by
//! bisection to width `1e-3` and then polished by Newton's method with a
//! bisection fallback. Iteration does not depend on the requested tolerance:
//! roots are always driven to machine precision and `tol` only gates the
//! accepted residual, so tightening `tol` never moves a root.
//!
//! Residuals are measured on pole-free forms scaled to unit slope near the
//! roots:
//!
//! | equation       | residual function          |
//! |----------------|----------------------------|
//! | `coth y = y`   | `coth y - y`               |
//! | `cot x = -x`   | `sin x + cos x / x`        |
//! | `tan x = x`    | `sin x / x - cos x`        |

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

const BISECTION_WIDTH: f64 = 1e-3;
const MAX_ITERATIONS: usize = 200;
const POLE_OFFSET: f64 = 1e-9;
/// Below this many roots `enumerate_roots` stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecularEquation {
    /// `y = coth y`; a single positive root `α ≈ 1.19967864`.
    CothFixedPoint,
    /// `cot x = -x`; the `m`-th root lies in `((m - 1/2)π, mπ)`.
    CotNegX,
    /// `tan x = x`; the `k`-th positive root lies in `(kπ, (k + 1/2)π)`.
    TanEqX,
}

impl SecularEquation {
    fn name(self) -> &'static str {
        match self {
            SecularEquation::CothFixedPoint => "coth y = y",
            SecularEquation::CotNegX => "cot x = -x",
            SecularEquation::TanEqX => "tan x = x",
        }
    }

    /// Isolating interval of the `index`-th positive root (1-based).
    pub fn bracket(self, index: usize) -> Result<(f64, f64)> {
        if index == 0 {
            return Err(Error::InvalidArgument("root index starts at 1".into()));
        }
        let k = index as f64;
        match self {
            SecularEquation::CothFixedPoint => {
                if index != 1 {
                    return Err(Error::InvalidArgument("coth y = y has a single positive root".into()));
                }
                Ok((1.0 + POLE_OFFSET, 2.0))
            }
            SecularEquation::CotNegX => Ok(((k - 0.5) * PI, k * PI)),
            SecularEquation::TanEqX => Ok((k * PI + POLE_OFFSET, (k + 0.5) * PI - POLE_OFFSET)),
        }
    }

    /// Scaled pole-free residual function whose zeros are the roots.
    pub fn value(self, x: f64) -> f64 {
        match self {
            SecularEquation::CothFixedPoint => 1.0 / x.tanh() - x,
            SecularEquation::CotNegX => x.sin() + x.cos() / x,
            SecularEquation::TanEqX => x.sin() / x - x.cos(),
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            SecularEquation::CothFixedPoint => {
                let c = 1.0 / x.tanh();
                -c * c
            }
            SecularEquation::CotNegX => {
                let (s, c) = x.sin_cos();
                c - s / x - c / (x * x)
            }
            SecularEquation::TanEqX => {
                let (s, c) = x.sin_cos();
                s + c / x - s / (x * x)
            }
        }
    }

    pub fn residual(self, x: f64) -> f64 {
        self.value(x).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub value: f64,
    /// Isolating interval the search started from.
    pub bracket: (f64, f64),
    /// `|f(value)|` for the scaled residual function of the equation.
    pub residual: f64,
    pub iterations: usize,
}

impl RootResult {
    /// Bound on `|value - root|` from the residual and the local slope, plus
    /// one unit in the last place.
    pub fn position_error(&self, eq: SecularEquation) -> f64 {
        let slope = eq.derivative(self.value).abs();
        let ulp = self.value.abs() * f64::EPSILON;
        if slope > 0.0 {
            2.0 * self.residual / slope + ulp
        } else {
            f64::INFINITY
        }
    }
}

/// Solve `eq` for its `index`-th root.
pub fn solve(eq: SecularEquation, index: usize, tol: f64) -> Result<RootResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let bracket = eq.bracket(index)?;
    solve_bracketed(eq, bracket, tol)
}

/// The root `α > 1` of `coth y = y`.
pub fn solve_coth_fixed_point(tol: f64) -> Result<RootResult> {
    solve(SecularEquation::CothFixedPoint, 1, tol)
}

/// The `m`-th positive root of `cot x = -x`.
pub fn solve_cot_root(m: usize, tol: f64) -> Result<RootResult> {
    solve(SecularEquation::CotNegX, m, tol)
}

/// The `k`-th strictly positive root of `tan x = x`.
pub fn solve_tan_root(k: usize, tol: f64) -> Result<RootResult> {
    solve(SecularEquation::TanEqX, k, tol)
}

/// First `count` roots of `eq` in increasing order.
pub fn enumerate_roots(eq: SecularEquation, count: usize, tol: f64) -> Result<Vec<RootResult>> {
    if eq == SecularEquation::CothFixedPoint && count > 1 {
        return Err(Error::InvalidArgument("coth y = y has a single positive root".into()));
    }
    if count < PARALLEL_THRESHOLD {
        (1..=count).map(|m| solve(eq, m, tol)).collect()
    } else {
        (1..=count).into_par_iter().map(|m| solve(eq, m, tol)).collect()
    }
}

fn solve_bracketed(eq: SecularEquation, bracket: (f64, f64), tol: f64) -> Result<RootResult> {
    let (lo, hi) = bracket;
    let f_lo = eq.value(lo);
    let f_hi = eq.value(hi);
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::BadBracket { what: eq.name().into(), lo, hi });
    }
    let lo_negative = f_lo < 0.0;
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;

    let not_converged = |a: f64, b: f64, iterations: usize| Error::NotConverged {
        what: eq.name().into(),
        lo: a,
        hi: b,
        residual: eq.residual(0.5 * (a + b)),
        iterations,
    };

    while b - a > BISECTION_WIDTH {
        let mid = 0.5 * (a + b);
        let f_mid = eq.value(mid);
        if f_mid == 0.0 {
            return finish(eq, bracket, mid, tol, iterations);
        }
        if (f_mid < 0.0) == lo_negative {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }

    let mut x = 0.5 * (a + b);
    loop {
        if iterations >= MAX_ITERATIONS {
            return Err(not_converged(a, b, iterations));
        }
        iterations += 1;
        let fx = eq.value(x);
        if fx == 0.0 {
            break;
        }
        if (fx < 0.0) == lo_negative {
            a = x;
        } else {
            b = x;
        }
        let dfx = eq.derivative(x);
        let mut next = x - fx / dfx;
        if !next.is_finite() || next <= a || next >= b {
            next = 0.5 * (a + b);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 2.0 * f64::EPSILON * x.abs() || b - a <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    finish(eq, bracket, x, tol, iterations)
}

fn finish(eq: SecularEquation, bracket: (f64, f64), x: f64, tol: f64, iterations: usize) -> Result<RootResult> {
    let residual = eq.residual(x);
    if residual > tol || !(bracket.0 < x && x < bracket.1) {
        return Err(Error::NotConverged { what: eq.name().into(), lo: bracket.0, hi: bracket.1, residual, iterations });
    }
    Ok(RootResult { value: x, bracket, residual, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection on the unscaled equation, kept independent of the solver.
    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let fa = f(a);
        while b - a > 1e-13 {
            let m = 0.5 * (a + b);
            if (f(m) < 0.0) == (fa < 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn coth_fixed_point() {
        let r = solve_coth_fixed_point(1e-12).unwrap();
        assert!((r.value - 1.19967864).abs() < 5e-9);
        assert!((1.0 / r.value.tanh() - r.value).abs() <= 1e-12);
        assert!((-4.0 * r.value * r.value - (-5.756915)).abs() < 5e-7);
        assert!(r.bracket.0 < r.value && r.value < r.bracket.1);
    }

    #[test]
    fn first_cot_root_matches_bisection_oracle() {
        let oracle = bisect(|x| x.cos() + x * x.sin(), PI / 2.0, PI);
        let r = solve_cot_root(1, 1e-12).unwrap();
        assert!((r.value - oracle).abs() < 1e-12);
        assert!((r.value - 2.798_386_045_783_887).abs() < 1e-12);
        // cot x1 = -x1
        assert!((1.0 / r.value.tan() + r.value).abs() < 1e-11);
        assert!((4.0 * r.value * r.value - 31.323_857_844_951_92).abs() < 1e-10);
    }

    #[test]
    fn cot_root_asymptotics() {
        let m = 100.0;
        let r = solve_cot_root(100, 1e-12).unwrap();
        assert!((r.value - (m * PI - 1.0 / (m * PI))).abs() < 1e-4);
    }

    #[test]
    fn first_tan_root() {
        let oracle = bisect(|x| x.sin() - x * x.cos(), PI + 1e-9, 1.5 * PI - 1e-9);
        let r = solve_tan_root(1, 1e-12).unwrap();
        assert!((r.value - oracle).abs() < 1e-12);
        assert!((r.value - 4.493_409_457_909_064).abs() < 1e-12);
        assert!((r.value.tan() - r.value).abs() < 1e-9);
    }

    #[test]
    fn tan_roots_increase() {
        let roots = enumerate_roots(SecularEquation::TanEqX, 101, 1e-12).unwrap();
        assert!(roots.windows(2).all(|w| w[1].value > w[0].value));
    }

    #[test]
    fn enumerate_edge_cases() {
        assert!(enumerate_roots(SecularEquation::CotNegX, 0, 1e-12).unwrap().is_empty());
        let three = enumerate_roots(SecularEquation::CotNegX, 3, 1e-12).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three[0].value < three[1].value && three[1].value < three[2].value);
        let alpha = enumerate_roots(SecularEquation::CothFixedPoint, 1, 1e-12).unwrap();
        assert!((alpha[0].value - 1.19967864).abs() < 5e-9);
        assert!(enumerate_roots(SecularEquation::CothFixedPoint, 2, 1e-12).is_err());
    }

    #[test]
    fn parallel_enumeration_is_deterministic() {
        let a = enumerate_roots(SecularEquation::CotNegX, 5000, 1e-10).unwrap();
        let b = enumerate_roots(SecularEquation::CotNegX, 5000, 1e-10).unwrap();
        assert_eq!(a, b);
        let serial: Vec<_> = (1..=5000).map(|m| solve_cot_root(m, 1e-10).unwrap()).collect();
        assert_eq!(a, serial);
    }

    #[test]
    fn cot_roots_stay_in_brackets_up_to_ten_thousand() {
        let roots = enumerate_roots(SecularEquation::CotNegX, 10_000, 1e-10).unwrap();
        for (i, r) in roots.iter().enumerate() {
            let m = (i + 1) as f64;
            assert!((m - 0.5) * PI < r.value && r.value < m * PI, "m = {m}");
            assert!(r.residual <= 1e-10);
        }
    }

    #[test]
    fn invalid_arguments() {
        assert!(matches!(solve_cot_root(0, 1e-12), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_tan_root(1, 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_tan_root(1, -1.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn unreachable_tolerance_reports_last_bracket() {
        // x ~ 3e6: an absolute residual of 1e-15 is below one ulp of slope.
        match solve_cot_root(1_000_000, 1e-15) {
            Err(Error::NotConverged { lo, hi, .. }) => assert!(lo < hi),
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }
}
