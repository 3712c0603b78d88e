//! Numerical primitives: adaptive quadrature on intervals and complex rays,
//! truncated power series, and fixed-step ODE integration.

pub mod ode;
pub mod quadrature;
pub mod series;

pub use ode::{ode_integrate, Rk4};
pub use quadrature::{
    adaptive_quad, line_quad, ray_quad, Estimate, QuadratureSpec, RayContour, RayEstimate,
};
pub use series::{series_reciprocal_sinh_ratio, sinh_ratio_series, PowerSeries};
