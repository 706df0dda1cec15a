use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "{what}: no convergence after {iterations} iterations \
         (last bracket [{lo}, {hi}], residual {residual:e})"
    )]
    NotConverged { what: String, lo: f64, hi: f64, residual: f64, iterations: usize },

    #[error("{what}: no sign change on bracket [{lo}, {hi}]")]
    BadBracket { what: String, lo: f64, hi: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the sum of reciprocal eigenvalues of the unit disk diverges (l = 1)")]
    Divergent,

    #[error("Newton-identity route is capped at p <= {cap}, requested {requested}")]
    NewtonCap { cap: usize, requested: usize },

    #[error("bounds did not reach width {tol:e} by m = {m}: last interval ({lower}, {upper})")]
    BoundsNotConverged { tol: f64, m: usize, lower: f64, upper: f64 },
}
