//! Eigenvalues and eigenfunctions of `-φ'' = λφ` on `(0, 1)` with
//! `φ(0) + φ(1) = -φ'(0) = φ'(1)`.
//!
//! The spectrum splits into three families:
//!
//! - `λ_0 = -4α²`, `α = coth α`, eigenfunction `C_0 cosh(2α(x - 1/2))`;
//! - `λ_{2m-1} = (2m - 1)²π²`, eigenfunction `√2 cos((2m - 1)πx)`;
//! - `λ_{2m} = 4x_m²`, `cot x_m = -x_m`, eigenfunction `C_{2m} cos(2x_m(x - 1/2))`.

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use crate::numeric::composite_gauss_legendre;
use crate::secular_roots::{self, SecularEquation, DEFAULT_TOL};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Negative,
    OddCosine,
    SecularEven,
}

impl Family {
    pub fn of_index(n: usize) -> Self {
        match n {
            0 => Family::Negative,
            n if n % 2 == 1 => Family::OddCosine,
            _ => Family::SecularEven,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Negative => "negative",
            Family::OddCosine => "odd-cosine",
            Family::SecularEven => "secular-even",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueEntry {
    pub index: usize,
    pub family: Family,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    /// `cosh(rate·(x - 1/2))`
    Hyperbolic { rate: f64 },
    /// `cos(freq·x)`
    Cosine { freq: f64 },
    /// `cos(freq·(x - 1/2))`
    CenteredCosine { freq: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    pub entry: EigenvalueEntry,
    /// `C_0`, `√2` or `C_{2m}` depending on the family.
    pub normalization: f64,
    shape: Shape,
}

impl Eigenfunction {
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit_interval(x)?;
        Ok(self.eval_unchecked(x))
    }

    /// Closed-form derivative `φ'(x)`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        check_unit_interval(x)?;
        Ok(self.derivative_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let c = self.normalization;
        match self.shape {
            Shape::Hyperbolic { rate } => c * (rate * (x - 0.5)).cosh(),
            Shape::Cosine { freq } => c * (freq * x).cos(),
            Shape::CenteredCosine { freq } => c * (freq * (x - 0.5)).cos(),
        }
    }

    fn derivative_unchecked(&self, x: f64) -> f64 {
        let c = self.normalization;
        match self.shape {
            Shape::Hyperbolic { rate } => c * rate * (rate * (x - 0.5)).sinh(),
            Shape::Cosine { freq } => -c * freq * (freq * x).sin(),
            Shape::CenteredCosine { freq } => -c * freq * (freq * (x - 0.5)).sin(),
        }
    }

    /// `(|φ(0) + φ(1) + φ'(0)|, |φ'(1) + φ'(0)|)`.
    pub fn boundary_residual(&self) -> (f64, f64) {
        let (v0, v1) = (self.eval_unchecked(0.0), self.eval_unchecked(1.0));
        let (d0, d1) = (self.derivative_unchecked(0.0), self.derivative_unchecked(1.0));
        ((v0 + v1 + d0).abs(), (d1 + d0).abs())
    }

    /// Composite Gauss–Legendre estimate of `∫_0^1 φ² dx`.
    pub fn norm_squared(&self, panels: usize) -> Result<f64> {
        if panels < 16 {
            return Err(Error::InvalidArgument(format!("normalization check needs at least 16 panels, got {panels}")));
        }
        Ok(composite_gauss_legendre(
            |x| {
                let v = self.eval_unchecked(x);
                v * v
            },
            0.0,
            1.0,
            panels,
        ))
    }
}

fn check_unit_interval(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} lies outside [0, 1]")))
    }
}

/// Tolerance that a root of `cot x = -x` near `mπ` can actually meet in
/// double precision.
pub fn cot_root_tol(m: usize) -> f64 {
    DEFAULT_TOL.max(16.0 * f64::EPSILON * m as f64 * PI)
}

/// The spectrum for a given `α`, with a cached prefix of `cot x = -x` roots.
#[derive(Debug, Clone)]
pub struct Spectrum {
    alpha: f64,
    cot_roots: Vec<f64>,
}

impl Spectrum {
    /// `α` from the root finder and no cached `cot` roots.
    pub fn new() -> Result<Self> {
        let alpha = secular_roots::solve_coth_fixed_point(DEFAULT_TOL)?.value;
        Ok(Self::with_alpha(alpha))
    }

    /// Spectrum with an explicit `α`; used to probe the sensitivity of the
    /// boundary checks.
    pub fn with_alpha(alpha: f64) -> Self {
        Self { alpha, cot_roots: Vec::new() }
    }

    /// Cache the first `count` roots of `cot x = -x`.
    pub fn with_cached_roots(mut self, count: usize) -> Result<Self> {
        let roots = secular_roots::enumerate_roots(SecularEquation::CotNegX, count, cot_root_tol(count))?;
        self.cot_roots = roots.into_iter().map(|r| r.value).collect();
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda0(&self) -> f64 {
        -4.0 * self.alpha * self.alpha
    }

    /// `x_m`, the `m`-th root of `cot x = -x`.
    pub fn cot_root(&self, m: usize) -> Result<f64> {
        match self.cot_roots.get(m.wrapping_sub(1)) {
            Some(&x) => Ok(x),
            None => Ok(secular_roots::solve_cot_root(m, cot_root_tol(m))?.value),
        }
    }

    pub fn eigenvalue(&self, n: usize) -> Result<f64> {
        Ok(self.entry(n)?.value)
    }

    pub fn entry(&self, n: usize) -> Result<EigenvalueEntry> {
        let family = Family::of_index(n);
        let value = match family {
            Family::Negative => self.lambda0(),
            Family::OddCosine => {
                let k = n as f64 * PI;
                k * k
            }
            Family::SecularEven => {
                let x = self.cot_root(n / 2)?;
                4.0 * x * x
            }
        };
        Ok(EigenvalueEntry { index: n, family, value })
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn entries(&self, count: usize) -> Result<Vec<EigenvalueEntry>> {
        if count == 0 {
            return Err(Error::InvalidArgument("spectrum needs at least one entry".into()));
        }
        (0..count).map(|n| self.entry(n)).collect()
    }

    pub fn eigenfunction(&self, n: usize) -> Result<Eigenfunction> {
        let entry = self.entry(n)?;
        let (normalization, shape) = match entry.family {
            Family::Negative => {
                let rate = 2.0 * self.alpha;
                (SQRT_2 / (1.0 + rate.sinh() / rate).sqrt(), Shape::Hyperbolic { rate })
            }
            Family::OddCosine => (SQRT_2, Shape::Cosine { freq: n as f64 * PI }),
            Family::SecularEven => {
                let freq = 2.0 * self.cot_root(n / 2)?;
                (SQRT_2 / (1.0 + freq.sin() / freq).sqrt(), Shape::CenteredCosine { freq })
            }
        };
        Ok(Eigenfunction { entry, normalization, shape })
    }
}

fn default_spectrum() -> Result<&'static Spectrum> {
    static SPECTRUM: OnceLock<std::result::Result<Spectrum, Error>> = OnceLock::new();
    SPECTRUM.get_or_init(|| Spectrum::new().and_then(|s| s.with_cached_roots(64))).as_ref().map_err(Clone::clone)
}

pub fn eigenvalue(n: usize) -> Result<f64> {
    default_spectrum()?.eigenvalue(n)
}

pub fn spectrum(count: usize) -> Result<Vec<EigenvalueEntry>> {
    default_spectrum()?.entries(count)
}

pub fn eigenfunction_eval(n: usize, x: f64) -> Result<f64> {
    default_spectrum()?.eigenfunction(n)?.eval(x)
}

pub fn boundary_residual(n: usize) -> Result<(f64, f64)> {
    Ok(default_spectrum()?.eigenfunction(n)?.boundary_residual())
}

pub fn normalization_check(n: usize, panels: usize) -> Result<f64> {
    default_spectrum()?.eigenfunction(n)?.norm_squared(panels)
}
