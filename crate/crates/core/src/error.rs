use thiserror::Error;

/// Errors raised by the depth library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DepthError {
    /// An input outside an operation's domain (coincident points, empty input, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An interval whose arrangement could not be shown invariant even after bisection.
    #[error("degenerate interval on query segment {segment_index}: t in [{t_lo}, {t_hi}] is not cyclically invariant")]
    Degeneracy { segment_index: usize, t_lo: f64, t_hi: f64 },

    /// An internal invariant was violated (negative cell width, inconsistent winding).
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// Adaptive quadrature hit its subdivision limit before meeting the tolerance.
    #[error("quadrature did not converge on [{a}, {b}] (estimated error {error})")]
    Quadrature { a: f64, b: f64, error: f64 },

    /// Malformed curve-set input.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T, E = DepthError> = std::result::Result<T, E>;

impl DepthError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        DepthError::Domain(msg.into())
    }
}
