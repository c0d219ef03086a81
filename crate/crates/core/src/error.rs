use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every evaluation route in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The argument sits on (or numerically at) a pole of the named function.
    #[error("{function}: pole at {at}")]
    Pole { function: &'static str, at: Complex64 },

    /// The argument is outside the domain the routine supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// Refinement stopped before reaching the requested tolerance. `best`
    /// holds the last computed value.
    #[error("no convergence ({context}): best {best}, err {err_estimate:e}")]
    Convergence {
        context: String,
        best: Complex64,
        err_estimate: f64,
    },

    /// A contour or quadrature descriptor violates its invariants.
    #[error("invalid contour: {0}")]
    Spec(String),

    /// The evaluated function came too close to zero on a winding contour.
    #[error("function nearly vanishes on the contour near {at}")]
    Boundary { at: Complex64 },

    /// Two independent computations of the same quantity disagreed.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the caller's input rather than by numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Pole { .. } | Error::Domain(_) | Error::Spec(_))
    }
}
