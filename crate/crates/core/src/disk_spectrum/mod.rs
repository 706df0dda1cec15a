//! Rayleigh functions of Bessel zeros and the power sums of the unit-disk
//! spectrum.
//!
//! `σ_{2ℓ}(ν) = Σ_n j_{ν,n}^{-2ℓ}` starts from `σ_2(ν) = 1/(4(ν+1))` and
//! continues through the convolution
//!
//! ```text
//! σ_{2n}(ν) = (1/(n+ν)) Σ_{k=1}^{n-1} σ_{2k}(ν) σ_{2(n-k)}(ν).
//! ```
//!
//! The disk eigenvalues are `j_{0,n}^2` (multiplicity 3) and `j_{ν,n}^2` for
//! `ν ≥ 1` (multiplicity 2), so `Σ λ^{-ℓ} = 3σ_{2ℓ}(0) + 2 Σ_{ν≥1} σ_{2ℓ}(ν)`.

mod bessel;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use bessel::{bessel_j, bessel_zero, bessel_zeros, MAX_ORDER, MAX_ZERO_INDEX};

use crate::numeric::{integral_tail, CompensatedSum};
use crate::spectral_oracles::PartialSum;
use crate::{Error, Result};

/// Smallest accepted tolerance for [`disk_power_sum`].
pub const MIN_DISK_TOL: f64 = 1e-14;
/// Largest order cutoff [`disk_power_sum`] will sum to.
pub const MAX_NU_CUTOFF: usize = 100_000_000;

fn require_l(l: usize) -> Result<()> {
    if l == 0 {
        Err(Error::InvalidArgument("ℓ must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Exact `σ_2(ν), σ_4(ν), …, σ_{2ℓ_max}(ν)`.
pub fn sigma_column(nu: usize, l_max: usize) -> Vec<BigRational> {
    let mut column: Vec<BigRational> = Vec::with_capacity(l_max);
    if l_max == 0 {
        return column;
    }
    column.push(BigRational::new(BigInt::from(1), BigInt::from(4 * (nu + 1))));
    for n in 2..=l_max {
        let mut acc = BigRational::zero();
        for k in 1..n {
            acc += &column[k - 1] * &column[n - k - 1];
        }
        column.push(acc / BigRational::from_integer(BigInt::from(n + nu)));
    }
    column
}

/// Exact `σ_{2ℓ}(ν)`.
pub fn sigma(l: usize, nu: usize) -> Result<BigRational> {
    require_l(l)?;
    Ok(sigma_column(nu, l).pop().expect("non-empty column"))
}

/// Floating-point `σ_2(ν), …, σ_{2ℓ_max}(ν)` by the same recursion.
pub fn sigma_f64_column(nu: usize, l_max: usize) -> Vec<f64> {
    let mut column = Vec::with_capacity(l_max);
    if l_max == 0 {
        return column;
    }
    column.push(1.0 / (4.0 * (nu as f64 + 1.0)));
    for n in 2..=l_max {
        let acc: f64 = (1..n).map(|k| column[k - 1] * column[n - k - 1]).sum();
        column.push(acc / (n + nu) as f64);
    }
    column
}

pub fn sigma_f64(l: usize, nu: usize) -> Result<f64> {
    require_l(l)?;
    Ok(*sigma_f64_column(nu, l).last().expect("non-empty column"))
}

/// Exact values `σ_{2ℓ}(ν)` keyed by `(ℓ, ν)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SigmaTable {
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl SigmaTable {
    /// All `σ_{2ℓ}(ν)` with `1 ≤ ℓ ≤ l_max`, `0 ≤ ν ≤ nu_max`.
    pub fn build(l_max: usize, nu_max: usize) -> Self {
        let mut entries = BTreeMap::new();
        for nu in 0..=nu_max {
            for (i, s) in sigma_column(nu, l_max).into_iter().enumerate() {
                entries.insert((i + 1, nu), s);
            }
        }
        SigmaTable { entries }
    }

    pub fn get(&self, l: usize, nu: usize) -> Option<&BigRational> {
        self.entries.get(&(l, nu))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }
}

/// `Σ_{n≤N} j_{ν,n}^{-2ℓ}` from computed Bessel zeros.
///
/// The tail uses `j_{ν,n} ≥ j_{0,n} > (n - 1/4)π`.
pub fn bessel_zero_power_sum(order: usize, l: usize, terms: usize) -> Result<PartialSum> {
    require_l(l)?;
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one zero is required".into()));
    }
    let tol = 1e-13;
    let zeros = bessel_zeros(order, terms, tol)?;
    let q = (2 * l) as i32;
    let mut sum = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut allowance = 0.0;
    for z in &zeros {
        let t = z.powi(-q);
        sum.add(t);
        magnitude += t;
        let position = tol.max(4.0 * f64::EPSILON * z) / z;
        allowance += t * (q as f64 * position + (q + 2) as f64 * f64::EPSILON);
    }
    let truncation = integral_tail(PI, 0.25, q as f64, terms as f64);
    Ok(PartialSum { value: sum.value(), tail_bound: truncation + allowance + 4.0 * f64::EPSILON * magnitude, terms })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskSum {
    pub l: usize,
    pub value: f64,
    /// Largest order `ν` included.
    pub nu_cutoff: usize,
    pub tail_bound: f64,
}

/// Upper bound for `2 Σ_{ν>V} σ_{2ℓ}(ν)`.
///
/// `σ_{2ℓ} ≤ j_{ν,1}^{-2(ℓ-2)} σ_4 ≤ σ_2^{ℓ-2} σ_4 ≤ 4^{-ℓ} (ν+1)^{-(ℓ+1)}`.
pub fn disk_order_tail(l: usize, nu_cutoff: usize) -> f64 {
    2.0 * 0.25f64.powi(l as i32) / (l as f64 * (nu_cutoff as f64 + 1.0).powi(l as i32))
}

/// `Σ_k λ_k^{-ℓ}` over the unit-disk spectrum, with certified error.
pub fn disk_power_sum(l: usize, tol: f64) -> Result<DiskSum> {
    match l {
        0 => return Err(Error::InvalidArgument("ℓ must be at least 2".into())),
        1 => return Err(Error::Divergent),
        _ => {}
    }
    if !(tol >= MIN_DISK_TOL) {
        return Err(Error::InvalidArgument(format!("tolerance must be at least {MIN_DISK_TOL:e}, got {tol}")));
    }
    // Smallest V with disk_order_tail(l, V) ≤ tol / 2.
    let target = 4.0 * 0.25f64.powi(l as i32) / (l as f64 * tol);
    let estimate = target.powf(1.0 / l as f64).ceil().max(1.0);
    if estimate > MAX_NU_CUTOFF as f64 {
        return Err(Error::InvalidArgument(format!("ℓ = {l} at tol = {tol:e} needs more than {MAX_NU_CUTOFF} orders")));
    }
    let mut nu_cutoff = (estimate as usize).saturating_sub(1);
    while disk_order_tail(l, nu_cutoff) > 0.5 * tol {
        nu_cutoff += 1;
    }

    let relative = ((l * l + 8) as f64) * f64::EPSILON;
    let mut sum = CompensatedSum::new();
    let mut magnitude = 0.0;
    for nu in (0..=nu_cutoff).rev() {
        let weight = if nu == 0 { 3.0 } else { 2.0 };
        let t = weight * sigma_f64_column(nu, l)[l - 1];
        sum.add(t);
        magnitude += t;
    }
    let tail_bound = disk_order_tail(l, nu_cutoff) + (relative + 4.0 * f64::EPSILON) * magnitude;
    Ok(DiskSum { l, value: sum.value(), nu_cutoff, tail_bound })
}

/// `3/32 + (π²/6 - 3/2)/8`.
pub fn disk_sum_l2_closed_form() -> f64 {
    3.0 / 32.0 + (PI * PI / 6.0 - 1.5) / 8.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn base_values() {
        assert_eq!(sigma(1, 0).unwrap(), r(1, 4));
        assert_eq!(sigma(2, 0).unwrap(), r(1, 32));
        assert!(sigma(0, 0).is_err());
    }

    #[test]
    fn sigma4_closed_form() {
        for nu in 0..=20i64 {
            assert_eq!(sigma(2, nu as usize).unwrap(), r(1, 16 * (nu + 1) * (nu + 1) * (nu + 2)));
        }
    }

    #[test]
    fn sigma6_closed_form() {
        for nu in 0..=10i64 {
            let expected = r(1, 32 * (nu + 1).pow(3) * (nu + 2) * (nu + 3));
            assert_eq!(sigma(3, nu as usize).unwrap(), expected);
        }
    }

    #[test]
    fn float_recursion_tracks_exact() {
        for nu in [0, 1, 7, 40] {
            let exact = sigma_column(nu, 8);
            let float = sigma_f64_column(nu, 8);
            for (e, f) in exact.iter().zip(&float) {
                let e = e.to_f64().unwrap();
                assert!((e - f).abs() <= 1e-15 * e);
            }
        }
    }

    #[test]
    fn table_lookup() {
        let t = SigmaTable::build(3, 4);
        assert_eq!(t.len(), 15);
        assert_eq!(t.get(2, 0), Some(&r(1, 32)));
        assert!(t.get(4, 0).is_none());
    }

    #[test]
    fn power_sum_below_power_of_sum() {
        for nu in 0..=50 {
            let col = sigma_column(nu, 5);
            for l in 2..=5 {
                let power = num_traits::pow(col[0].clone(), l);
                assert!(col[l - 1] < power);
            }
        }
    }

    #[test]
    fn bessel_oracle_agreement() {
        for nu in 0..=3 {
            for l in 1..=3 {
                let s = bessel_zero_power_sum(nu, l, 500).unwrap();
                let exact = sigma(l, nu).unwrap().to_f64().unwrap();
                assert!(s.value <= exact + s.tail_bound);
                assert!((exact - s.value).abs() <= s.tail_bound, "ν = {nu}, ℓ = {l}");
            }
        }
    }

    #[test]
    fn disk_l2_matches_closed_form() {
        let d = disk_power_sum(2, 1e-13).unwrap();
        assert!(d.tail_bound <= 1e-13);
        assert!((d.value - disk_sum_l2_closed_form()).abs() < 1e-12);
        assert!((disk_sum_l2_closed_form() - 0.111_866_758_356_028_3).abs() < 1e-15);
    }

    #[test]
    fn disk_l1_diverges() {
        assert_eq!(disk_power_sum(1, 1e-10), Err(Error::Divergent));
        assert!(disk_power_sum(0, 1e-10).is_err());
        assert!(disk_power_sum(2, 1e-16).is_err());
    }

    #[test]
    fn disk_l3_stable_under_refinement() {
        let coarse = disk_power_sum(3, 1e-8).unwrap();
        let fine = disk_power_sum(3, 5e-9).unwrap();
        assert!(fine.nu_cutoff >= coarse.nu_cutoff);
        assert!((fine.value - coarse.value).abs() <= coarse.tail_bound);
        assert!(coarse.tail_bound <= 1e-8 && fine.tail_bound <= 5e-9);
    }
}
