//! Spectral data and Rayleigh sums for the one-dimensional Laplacian with the
//! non-local boundary condition
//!
//! ```text
//! -φ'' = λ φ on (0, 1),    φ(0) + φ(1) = -φ'(0) = φ'(1),
//! ```
//!
//! which is the eigenvalue problem of the integral operator with kernel
//! `K(x, y) = -|x - y| / 2` on the unit interval.
//!
//! The crate is organised bottom-up:
//!
//! - [`secular_roots`]: bracketed roots of `coth y = y`, `cot x = -x` and `tan x = x`.
//! - [`eigen_spectrum`]: eigenvalues, eigenfunctions, boundary and normalization checks.
//! - [`exact_rayleigh`]: exact rational power sums `A_p = Σ λ_n^{-p}` by three
//!   independent routes.
//! - [`spectral_oracles`]: Nyström traces, truncated direct sums with certified
//!   tails, reference sums for `tan x = x`.
//! - [`eig_bounds`]: Euler–Rayleigh enclosures of the negative eigenvalue.
//! - [`disk_spectrum`]: Rayleigh functions of Bessel zeros and the unit-disk sums.
//! - [`verify`]: the end-to-end cross-validation suite used by the CLI.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod disk_spectrum;
pub mod eig_bounds;
pub mod eigen_spectrum;
mod error;
pub mod exact_rayleigh;
pub mod numeric;
pub mod secular_roots;
pub mod spectral_oracles;
pub mod verify;

pub use error::{Error, Result};
pub use num_rational::BigRational;
