use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("series for {what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("index ({m},{n}) exceeds the degree cap {cap}")]
    IndexCap { m: usize, n: usize, cap: usize },

    #[error("exponent real part {0} exceeds the overflow guard")]
    Overflow(f64),

    #[error("non-finite integrand sample at node {node}")]
    NonFinite { node: String },

    #[error("quadrature rule mismatch: expected {expected}, found {found}")]
    RuleMismatch { expected: String, found: String },

    #[error("operation requires alpha > 0 and beta > 0 (got alpha={alpha}, beta={beta})")]
    Regime { alpha: f64, beta: f64 },

    #[error("angular rule with {n_angular} nodes aliases mode {k_max}; need n_angular > 2*max|k|")]
    Aliasing { n_angular: usize, k_max: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }
}
