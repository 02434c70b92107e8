use thiserror::Error;

/// Errors reported by every fallible routine in the crate.
///
/// Numerical routines never return NaN as a failure signal; they return one
/// of these variants instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("divergent integral: {0}")]
    Divergence(String),

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("contour violates the admissible strip: {0}")]
    Strip(String),

    #[error("integrand decays too slowly along the contour: {0}")]
    InsufficientDecay(String),

    #[error("truncation budget exceeded: {0}")]
    TruncationBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
