//! Euler–Rayleigh enclosures of the negative eigenvalue `λ_0` from the exact
//! sums `A_p`.
//!
//! Since `λ_0` is the only negative eigenvalue and has the smallest modulus,
//! for every `m ≥ 1`
//!
//! ```text
//! -|A_{2m-1}|^{-1/(2m-1)} < λ_0 < -A_{2m}^{-1/(2m)}       (root bounds)
//!  A_{2m} / A_{2m+1}      < λ_0 < A_{2m-1} / A_{2m}        (ratio bounds)
//! ```

use num_traits::{Signed, Zero};

use crate::exact_rayleigh::RayleighTable;
use crate::numeric::{rational_nth_root, rational_to_f64};
use crate::{Error, Result};

/// Significant digits carried by the exact `q`-th roots.
const ROOT_DIGITS: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundScheme {
    Root,
    Ratio,
}

impl BoundScheme {
    pub fn name(self) -> &'static str {
        match self {
            BoundScheme::Root => "root",
            BoundScheme::Ratio => "ratio",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub m: usize,
    /// `-∞` when the lower bound degenerates (`A_{2m-1} = 0`).
    pub lower: f64,
    pub upper: f64,
    pub scheme: BoundScheme,
    pub degenerate_lower: bool,
}

impl BoundPair {
    pub fn contains(&self, x: f64) -> bool {
        self.lower < x && x < self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

fn entry(table: &RayleighTable, p: usize) -> Result<&num_rational::BigRational> {
    table.get(p).ok_or_else(|| Error::InvalidArgument(format!("table holds A_1..A_{}, A_{p} is required", table.len())))
}

fn require_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidArgument("m must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `(-|A_{2m-1}|^{-1/(2m-1)}, -A_{2m}^{-1/(2m)})`.
pub fn bound_root_pair(m: usize, table: &RayleighTable) -> Result<BoundPair> {
    require_m(m)?;
    let odd = entry(table, 2 * m - 1)?;
    let even = entry(table, 2 * m)?;
    if !even.is_positive() {
        return Err(Error::InvalidArgument(format!("A_{} must be positive", 2 * m)));
    }
    let upper = -rational_nth_root(&even.recip(), (2 * m) as u32, ROOT_DIGITS);
    let (lower, degenerate_lower) = if odd.is_zero() {
        (f64::NEG_INFINITY, true)
    } else {
        (-rational_nth_root(&odd.abs().recip(), (2 * m - 1) as u32, ROOT_DIGITS), false)
    };
    Ok(BoundPair { m, lower, upper, scheme: BoundScheme::Root, degenerate_lower })
}

/// `(A_{2m}/A_{2m+1}, A_{2m-1}/A_{2m})`.
pub fn bound_ratio_pair(m: usize, table: &RayleighTable) -> Result<BoundPair> {
    require_m(m)?;
    let a = entry(table, 2 * m - 1)?;
    let b = entry(table, 2 * m)?;
    let c = entry(table, 2 * m + 1)?;
    if b.is_zero() || c.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in ratio bound at m = {m}")));
    }
    Ok(BoundPair {
        m,
        lower: rational_to_f64(&(b / c)),
        upper: rational_to_f64(&(a / b)),
        scheme: BoundScheme::Ratio,
        degenerate_lower: false,
    })
}

/// Smallest `m ≤ m_max` whose ratio interval is no wider than `tol`;
/// returns its midpoint and the interval.
pub fn converge_lambda0(tol: f64, m_max: usize, table: &RayleighTable) -> Result<(f64, BoundPair)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    require_m(m_max)?;
    if table.len() < 2 * m_max + 1 {
        return Err(Error::InvalidArgument(format!(
            "m_max = {m_max} needs A_1..A_{}, table holds {}",
            2 * m_max + 1,
            table.len()
        )));
    }
    let mut last = None;
    for m in 1..=m_max {
        let pair = bound_ratio_pair(m, table)?;
        if pair.width() <= tol {
            return Ok((pair.midpoint(), pair));
        }
        last = Some(pair);
    }
    let last = last.expect("m_max >= 1");
    Err(Error::BoundsNotConverged { tol, m: m_max, lower: last.lower, upper: last.upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_rayleigh::{rayleigh_bernoulli, rayleigh_newton, rayleigh_recursion};

    const LAMBDA0: f64 = -5.756_915_359_562_58;

    #[test]
    fn first_root_pair_is_degenerate_below() {
        let t = rayleigh_recursion(4).unwrap();
        let b = bound_root_pair(1, &t).unwrap();
        assert!(b.degenerate_lower && b.lower == f64::NEG_INFINITY);
        assert!((b.upper + 24f64.sqrt()).abs() < 1e-14);
        assert!(b.contains(LAMBDA0));
    }

    #[test]
    fn second_root_pair() {
        let t = rayleigh_recursion(4).unwrap();
        let b = bound_root_pair(2, &t).unwrap();
        assert!((b.lower + 240f64.cbrt()).abs() < 1e-13);
        assert!((b.upper + (40320.0f64 / 41.0).powf(0.25)).abs() < 1e-13);
        assert!(b.contains(LAMBDA0));
    }

    #[test]
    fn ratio_pairs() {
        let t = rayleigh_recursion(7).unwrap();
        let b1 = bound_ratio_pair(1, &t).unwrap();
        assert_eq!((b1.lower, b1.upper), (-10.0, 0.0));
        let b2 = bound_ratio_pair(2, &t).unwrap();
        assert!((b2.lower + 738.0 / 107.0).abs() < 1e-14);
        assert!((b2.upper + 168.0 / 41.0).abs() < 1e-14);
        let b3 = bound_ratio_pair(3, &t).unwrap();
        assert!(b3.width() < b2.width());
    }

    #[test]
    fn short_table_is_rejected() {
        let t = rayleigh_recursion(3).unwrap();
        assert!(bound_root_pair(2, &t).is_err());
        assert!(bound_ratio_pair(2, &t).is_err());
        assert!(bound_ratio_pair(0, &t).is_err());
    }

    #[test]
    fn convergence() {
        let t = rayleigh_recursion(41).unwrap();
        let (est, pair) = converge_lambda0(0.1, 20, &t).unwrap();
        assert!(pair.contains(LAMBDA0) && pair.width() <= 0.1);
        assert!((est - LAMBDA0).abs() <= 0.1);
        let (_, first) = converge_lambda0(10.0, 1, &t).unwrap();
        assert_eq!((first.lower, first.upper), (-10.0, 0.0));
        assert!(matches!(converge_lambda0(1e-12, 2, &t), Err(Error::BoundsNotConverged { m: 2, .. })));
        assert!(converge_lambda0(0.1, 21, &t).is_err());
    }

    #[test]
    fn bounds_independent_of_pipeline() {
        let tables = [rayleigh_recursion(11).unwrap(), rayleigh_bernoulli(11).unwrap(), rayleigh_newton(11).unwrap()];
        for m in 1..=5 {
            let root: Vec<_> = tables.iter().map(|t| bound_root_pair(m, t).unwrap()).collect();
            let ratio: Vec<_> = tables.iter().map(|t| bound_ratio_pair(m, t).unwrap()).collect();
            assert!(root.windows(2).all(|w| w[0] == w[1]));
            assert!(ratio.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
