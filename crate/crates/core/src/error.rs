use thiserror::Error;

/// Errors raised by the numeric layers.
///
/// Magnitudes are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {error_estimate:e}, target {target:e})")]
    NonConvergence {
        subdivisions: usize,
        error_estimate: f64,
        target: f64,
    },

    #[error("integration state exceeded {bound:e} at s = {s}")]
    StateBlowup { s: f64, bound: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("pole hit: |p² - z| = {distance:e} is below the floor {floor:e}")]
    PoleHit { distance: f64, floor: f64 },

    #[error("contour passes within {distance:e} of the pole at {pole_im:e}·i")]
    PoleProximity { distance: f64, pole_im: f64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// `true` for failures of an iterative numeric procedure to reach its target.
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
