//! Integer-order Bessel functions `J_n(z)` and their positive zeros, at the
//! scale needed to cross-check Rayleigh functions (orders up to 10, a few
//! hundred zeros).

use std::f64::consts::PI;

use crate::{Error, Result};

pub const MAX_ORDER: usize = 10;
pub const MAX_ZERO_INDEX: usize = 1000;

/// Below this argument the ascending series is used.
const SERIES_LIMIT: f64 = 5.0;
const RESCALE_AT: f64 = 1e250;

/// `J_n(z)` for integer `n ≥ 0` and `z ≥ 0`.
pub fn bessel_j(order: usize, z: f64) -> f64 {
    if z == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if z < SERIES_LIMIT {
        ascending_series(order, z)
    } else {
        backward_recurrence(order, z)
    }
}

fn ascending_series(order: usize, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = (1..=order).fold(1.0, |t, k| t * half / k as f64);
    let mut sum = term;
    let q = -half * half;
    for k in 1..200 {
        term *= q / (k * (k + order)) as f64;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's algorithm normalized with `J_0 + 2 Σ_{k≥1} J_{2k} = 1`.
fn backward_recurrence(order: usize, z: f64) -> f64 {
    let top = order.max(z.ceil() as usize) as f64;
    let mut start = (top + 30.0 + 15.0 * top.cbrt()) as usize;
    start += start % 2;

    let mut above = 0.0; // J_{k+1}
    let mut current = 1e-300; // J_k, k = start
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        let below = 2.0 * k as f64 / z * current - above;
        above = current;
        current = below;
        let index = k - 1;
        if index == order {
            wanted = current;
        }
        if index > 0 && index % 2 == 0 {
            norm += 2.0 * current;
        }
        if current.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            current *= s;
            above *= s;
            norm *= s;
            wanted *= s;
        }
    }
    norm += current;
    wanted / norm
}

/// First `count` positive zeros of `J_order`, increasing.
///
/// Zeros of `J_0` are isolated in `((n - 1/2)π, nπ)`; zeros of `J_{ν+1}` are
/// then isolated by interlacing, `j_{ν,n} < j_{ν+1,n} < j_{ν,n+1}`.
pub fn bessel_zeros(order: usize, count: usize, tol: f64) -> Result<Vec<f64>> {
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!("Bessel order {order} exceeds {MAX_ORDER}")));
    }
    if count > MAX_ZERO_INDEX {
        return Err(Error::InvalidArgument(format!("zero index {count} exceeds {MAX_ZERO_INDEX}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut zeros: Vec<f64> = (1..=count + order)
        .map(|n| {
            let n = n as f64;
            refine(0, (n - 0.5) * PI, n * PI, tol)
        })
        .collect::<Result<_>>()?;
    for nu in 1..=order {
        let keep = count + order - nu;
        zeros = (0..keep).map(|i| refine(nu, zeros[i], zeros[i + 1], tol)).collect::<Result<_>>()?;
    }
    zeros.truncate(count);
    Ok(zeros)
}

/// `j_{ν,n}`, the `n`-th positive zero of `J_ν`.
pub fn bessel_zero(order: usize, n: usize, tol: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("zero index starts at 1".into()));
    }
    Ok(bessel_zeros(order, n, tol)?[n - 1])
}

fn refine(order: usize, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let fa = bessel_j(order, a);
    let fb = bessel_j(order, b);
    if !(fa * fb < 0.0) {
        return Err(Error::BadBracket { what: format!("J_{order}"), lo: a, hi: b });
    }
    let a_negative = fa < 0.0;
    for _ in 0..200 {
        if b - a <= tol.max(4.0 * f64::EPSILON * b) {
            return Ok(0.5 * (a + b));
        }
        let mid = 0.5 * (a + b);
        let fm = bessel_j(order, mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == a_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    Err(Error::NotConverged {
        what: format!("zero of J_{order}"),
        lo: a,
        hi: b,
        residual: bessel_j(order, 0.5 * (a + b)).abs(),
        iterations: 200,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (0, 10.0, -0.245_935_764_451_348_3),
            (1, 10.0, 0.043_472_746_168_861_44),
            (2, 5.0, 0.046_565_116_277_752_22),
            (10, 10.0, 0.207_486_106_633_358_9),
            (0, 4.9, -0.209_738_327_585_326_2),
            (0, 5.1, -0.144_334_747_060_500_8),
        ];
        for (n, z, expected) in cases {
            let v = bessel_j(n, z);
            assert!((v - expected).abs() < 1e-13, "J_{n}({z}) = {v}, expected {expected}");
        }
    }

    #[test]
    fn series_and_recurrence_agree_at_switch() {
        for n in 0..=10 {
            for z in [3.0, 4.0, 4.99] {
                let s = ascending_series(n, z);
                let r = backward_recurrence(n, z);
                assert!((s - r).abs() < 1e-14, "n = {n}, z = {z}: {s} vs {r}");
            }
        }
    }

    #[test]
    fn large_argument_values_and_zeros() {
        assert!((bessel_j(3, 1234.5) + 0.018_173_507_062_042_765).abs() < 1e-14);
        assert!((bessel_j(10, 40.0) - 0.119_383_362_782_260_86).abs() < 1e-14);
        for (nu, n, expected) in [
            (0, 500, 1_570.011_008_248_758_6),
            (3, 500, 1_574.720_539_340_886),
            (10, 1000, 3_156.499_417_950_386_5),
            (7, 37, 126.256_001_010_117_66),
        ] {
            let z = bessel_zero(nu, n, 1e-13).unwrap();
            assert!((z - expected).abs() < 1e-10 * expected, "j_{{{nu},{n}}} = {z}");
        }
    }

    #[test]
    fn first_zero_of_j0() {
        let z = bessel_zero(0, 1, 1e-14).unwrap();
        assert!((z - 2.404_825_557_695_773).abs() < 1e-12);
    }

    #[test]
    fn interlacing() {
        let zeros: Vec<Vec<f64>> = (0..=4).map(|nu| bessel_zeros(nu, 11, 1e-13).unwrap()).collect();
        for nu in 0..=3 {
            for n in 0..10 {
                assert!(zeros[nu][n] < zeros[nu + 1][n] && zeros[nu + 1][n] < zeros[nu][n + 1]);
            }
        }
    }

    #[test]
    fn range_checks() {
        assert!(bessel_zeros(11, 5, 1e-12).is_err());
        assert!(bessel_zeros(0, MAX_ZERO_INDEX + 1, 1e-12).is_err());
        assert!(bessel_zero(0, 0, 1e-12).is_err());
    }
}
