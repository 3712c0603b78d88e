//! Proper-time methods for a charged scalar in a constant electric field:
//! Gamow (resonant) states of the inverted oscillator, the Fock–Schwinger
//! kernel, the Heisenberg–Euler effective Lagrangian and its pair-creation
//! rate, semiclassical tunneling, and Green functions built by proper-time
//! integration.
//!
//! Everything is generic over a [`Real`] scalar (`f32` or `f64`); the `*64`
//! aliases fix the usual double-precision choice.

// `!(x > lo)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod field;
pub mod gamow;
pub mod numerics;
pub mod propagators;
pub mod proper_time;
pub mod scalar;
pub mod semiclassics;

pub use error::{Error, Result};
pub use field::FieldConfig;
pub use gamow::{Branch, GamowMode, LadderFrame, SpectralTruncation};
pub use numerics::{QuadratureSpec, RayContour};
pub use propagators::{BoundaryCondition, MomentumPoint, OffshellKernelSample};
pub use proper_time::{EffLagResult, ImagMethod, PoleCatalog, RateSeries};
pub use scalar::Real;
pub use semiclassics::{TrajectoryState, TunnelingSetup, TurningPoints};

pub type Complex64 = num_complex::Complex<f64>;
pub type FieldConfig64 = FieldConfig<f64>;
pub type GamowMode64 = GamowMode<f64>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type RateSeries64 = RateSeries<f64>;
