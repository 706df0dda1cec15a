//! Exact rational Rayleigh sums `A_p = Σ_{n≥0} λ_n^{-p}`.
//!
//! Three independent routes are provided and must agree as canonical
//! rationals:
//!
//! - [`rayleigh_recursion`]: the linear recursion obtained from the
//!   generating function of the sums,
//!   `4A_{n+1} + Σ_{k=1}^{n-1} (-1)^k (2/(2k)! - 1/(2k-1)!) A_{n-k+1} = (-1)^{n+1} n/(2n+1)!`
//!   seeded with `A_1 = 0`;
//! - [`rayleigh_bernoulli`]: per-family splitting, with the odd cosine modes
//!   summed through Euler's even zeta values and the remaining modes through
//!   the power sums `T_{2ℓ}` of [`secular_power_sums`];
//! - [`rayleigh_newton`]: Newton's identities applied to the Maclaurin
//!   coefficients of `(1 + cos x)/2 + (x/4) sin x` in the variable `x²`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::rational_to_f64;
use crate::{Error, Result};

/// Highest order served by [`rayleigh_newton`].
pub const NEWTON_MAX_P: usize = 12;

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for k in 1..=n {
        let next = &out[k - 1] * BigInt::from(k);
        out.push(next);
    }
    out
}

fn inv(x: &BigInt) -> BigRational {
    BigRational::new(BigInt::one(), x.clone())
}

fn signed(value: BigRational, negative: bool) -> BigRational {
    if negative {
        -value
    } else {
        value
    }
}

fn require_positive(name: &str, p: usize) -> Result<()> {
    if p == 0 {
        Err(Error::InvalidArgument(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// Bernoulli numbers `B_0..=B_nmax` with `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// `Σ_{k=0}^{n} C(n+1, k) B_k = 0` for `n ≥ 1`, solved for `B_n`.
pub fn bernoulli(nmax: usize) -> BernoulliTable {
    let mut values: Vec<BigRational> = Vec::with_capacity(nmax + 1);
    values.push(BigRational::one());
    // binomial row C(n+1, ·), rebuilt per n
    for n in 1..=nmax {
        let mut binom = BigInt::one(); // C(n+1, 0)
        let mut acc = BigRational::zero();
        for (k, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += BigRational::from_integer(binom.clone()) * b;
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        // binom is now C(n+1, n) = n+1
        values.push(-acc / BigRational::from_integer(binom));
    }
    BernoulliTable { values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RayleighMethod {
    /// Linear recursion from the generating function of the sums.
    GeneratingRecursion,
    /// Per-family splitting with Bernoulli numbers.
    BernoulliRoute,
    /// Newton's identities on the Maclaurin coefficients.
    NewtonIdentities,
}

impl RayleighMethod {
    pub fn name(self) -> &'static str {
        match self {
            RayleighMethod::GeneratingRecursion => "recursion",
            RayleighMethod::BernoulliRoute => "bernoulli",
            RayleighMethod::NewtonIdentities => "newton",
        }
    }
}

/// Exact `A_1..=A_P`, indexed from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RayleighTable {
    pub method: RayleighMethod,
    values: Vec<BigRational>,
}

impl RayleighTable {
    pub fn new(method: RayleighMethod, values: Vec<BigRational>) -> Self {
        Self { method, values }
    }

    /// `A_p` for `1 ≤ p ≤ len()`.
    pub fn get(&self, p: usize) -> Option<&BigRational> {
        p.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational_to_f64).collect()
    }

    /// Same values regardless of the producing method.
    pub fn same_values(&self, other: &RayleighTable) -> bool {
        self.values == other.values
    }
}

/// `A_1..=A_P` from the generating-function recursion.
pub fn rayleigh_recursion(p_max: usize) -> Result<RayleighTable> {
    require_positive("P", p_max)?;
    let fact = factorials(2 * p_max + 1);
    // coefficient of A_{n-k+1}: (-1)^k (2/(2k)! - 1/(2k-1)!)
    let coeff = |k: usize| {
        let c = BigRational::from_integer(BigInt::from(2)) * inv(&fact[2 * k]) - inv(&fact[2 * k - 1]);
        signed(c, k % 2 == 1)
    };
    let mut a = vec![BigRational::zero()];
    for n in 1..p_max {
        let mut acc = signed(BigRational::new(BigInt::from(n), fact[2 * n + 1].clone()), n % 2 == 0);
        // the k = n term multiplies A_1 = 0; the sum stops at n - 1
        for k in 1..n {
            acc -= coeff(k) * &a[n - k];
        }
        a.push(acc / BigRational::from_integer(BigInt::from(4)));
    }
    Ok(RayleighTable::new(RayleighMethod::GeneratingRecursion, a))
}

/// Power sums over the squared roots of `cos x + x sin x`:
/// `T_{2ℓ} = Σ_m x_m^{-2ℓ} + (-1)^ℓ α^{-2ℓ}` for `ℓ = 1..=P`, indexed from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularPowerSums {
    values: Vec<BigRational>,
}

impl SecularPowerSums {
    /// `T_{2ℓ}` for `1 ≤ ℓ ≤ len()`.
    pub fn get(&self, l: usize) -> Option<&BigRational> {
        l.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// Solve the triangular system
/// `Σ_{ℓ=1}^{n+1} c_{n-ℓ+1} T_{2ℓ} = (-1)^n / (2(2n)!)`, `n = 0..P-1`,
/// with `c_j = (-1)^j (2j - 1)/(2j)!` (so `c_0 = -1`).
pub fn secular_power_sums(p_max: usize) -> Result<SecularPowerSums> {
    require_positive("P", p_max)?;
    let fact = factorials(2 * p_max);
    let c = |j: usize| {
        let v = BigRational::new(BigInt::from(2 * j as i64 - 1), fact[2 * j].clone());
        signed(v, j % 2 == 1)
    };
    let mut t: Vec<BigRational> = Vec::with_capacity(p_max);
    for n in 0..p_max {
        let rhs = signed(BigRational::new(BigInt::one(), BigInt::from(2) * &fact[2 * n]), n % 2 == 1);
        let mut acc = rhs;
        for l in 1..=n {
            acc -= c(n - l + 1) * &t[l - 1];
        }
        // c_0 = -1
        t.push(-acc);
    }
    Ok(SecularPowerSums { values: t })
}

/// Rational `c_p` with `Σ_{m≥1} m^{-2p} = c_p π^{2p}`, i.e.
/// `c_p = 2^{2p-1} |B_{2p}| / (2p)!`.
pub fn zeta_even(p: usize) -> Result<BigRational> {
    require_positive("p", p)?;
    let b = bernoulli(2 * p);
    let fact = factorials(2 * p);
    let pow2 = num_traits::pow(BigInt::from(2), 2 * p - 1);
    Ok(BigRational::from_integer(pow2) * b.values[2 * p].abs() / BigRational::from_integer(fact[2 * p].clone()))
}

/// `A_p = T_{2p}/4^p + (4^p - 1)/(2(2p)!) |B_{2p}|`.
pub fn rayleigh_bernoulli(p_max: usize) -> Result<RayleighTable> {
    require_positive("P", p_max)?;
    let t = secular_power_sums(p_max)?;
    let b = bernoulli(2 * p_max);
    let fact = factorials(2 * p_max);
    let values = (1..=p_max)
        .map(|p| {
            let four_p = num_traits::pow(BigInt::from(4), p);
            let odd_modes =
                BigRational::new(&four_p - BigInt::one(), BigInt::from(2) * &fact[2 * p]) * b.values[2 * p].abs();
            &t.values[p - 1] / BigRational::from_integer(four_p) + odd_modes
        })
        .collect();
    Ok(RayleighTable::new(RayleighMethod::BernoulliRoute, values))
}

/// Maclaurin coefficients `α_k`, `k = 0..=K`, of
/// `(1 + cos x)/2 + (x/4) sin x = Σ α_k x^{2k}`; `α_0 = 1` and
/// `α_k = (-1)^k (1/(2(2k)!) - 1/(4(2k-1)!))`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaclaurinCoeffs {
    values: Vec<BigRational>,
}

impl MaclaurinCoeffs {
    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

pub fn maclaurin_coeffs(k_max: usize) -> Result<MaclaurinCoeffs> {
    require_positive("K", k_max)?;
    let fact = factorials(2 * k_max);
    let mut values = vec![BigRational::one()];
    for k in 1..=k_max {
        let v = BigRational::new(BigInt::one(), BigInt::from(2) * &fact[2 * k])
            - BigRational::new(BigInt::one(), BigInt::from(4) * &fact[2 * k - 1]);
        values.push(signed(v, k % 2 == 1));
    }
    Ok(MaclaurinCoeffs { values })
}

/// Newton's identities for reciprocal roots of `F(w) = Σ α_k w^k`:
/// `A_k = -k α_k - Σ_{j=1}^{k-1} α_j A_{k-j}`.
pub fn rayleigh_newton(p_max: usize) -> Result<RayleighTable> {
    require_positive("P", p_max)?;
    if p_max > NEWTON_MAX_P {
        return Err(Error::NewtonCap { cap: NEWTON_MAX_P, requested: p_max });
    }
    let alpha = maclaurin_coeffs(p_max)?.values;
    let mut a: Vec<BigRational> = Vec::with_capacity(p_max);
    for k in 1..=p_max {
        let mut acc = -BigRational::from_integer(BigInt::from(k)) * &alpha[k];
        for j in 1..k {
            acc -= &alpha[j] * &a[k - j - 1];
        }
        a.push(acc);
    }
    Ok(RayleighTable::new(RayleighMethod::NewtonIdentities, a))
}

/// Floating `S_{2p} = Σ_m x_m^{-2p} = T_{2p} - (-1)^p α^{-2p}` for `p = 1..=P`.
pub fn cot_root_power_sums(p_max: usize, alpha: f64) -> Result<Vec<f64>> {
    let t = secular_power_sums(p_max)?;
    Ok(t.values
        .iter()
        .enumerate()
        .map(|(i, tp)| {
            let p = i as i32 + 1;
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            rational_to_f64(tp) - sign * alpha.powi(-2 * p)
        })
        .collect())
}
