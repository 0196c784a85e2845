use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{method} did not reach tolerance {tol:e} within {terms} terms")]
    NonConvergence {
        method: &'static str,
        tol: f64,
        terms: usize,
    },

    #[error("engines disagree at {alpha}+{beta}i: |diff| = {gap:e} exceeds combined estimate {allowed:e}")]
    CrossCheck {
        alpha: f64,
        beta: f64,
        gap: f64,
        allowed: f64,
    },

    #[error("pole of zeta at s = 1 (|1 - 2^(1-s)| = {factor_abs:e})")]
    Singular { factor_abs: f64 },

    #[error(
        "conversion factor too small near a zero on Re(s) = 1 (|1 - 2^(1-s)| = {factor_abs:e})"
    )]
    IllConditioned { factor_abs: f64 },

    #[error("sequence contract violated at index {index}: {reason}")]
    Contract { index: u64, reason: String },

    #[error("quadrature and closed form disagree: {quadrature} vs {closed_form}")]
    QuadratureMismatch { quadrature: f64, closed_form: f64 },

    #[error("no zero in [{lo}, {hi}]: refined minimum {min_abs:e} is not below {tol:e}")]
    NoZeroFound {
        lo: f64,
        hi: f64,
        min_abs: f64,
        tol: f64,
    },

    #[error("degenerate geometry: {0}")]
    Degenerate(String),
}

impl Error {
    /// True for failures that signal numerical unreliability rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::CrossCheck { .. }
                | Error::NonConvergence { .. }
                | Error::QuadratureMismatch { .. }
        )
    }
}
