//! Shared numerical kernels: quadrature, root finding, monotone
//! interpolation, adaptive Runge-Kutta stepping, least squares and a
//! tridiagonal solve.
//!
//! Everything here is deterministic and allocation-light; the physics
//! modules build on these primitives.

pub mod fit;
pub mod interp;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod tridiag;

pub use fit::{linear_fit, lstsq3, power_law_exponent};
pub use interp::Pchip;
pub use ode::{integrate_adaptive, OdeOptions};
pub use quad::{adaptive_simpson, cumquad_uniform, cumtrapz, simpson_uniform, sqrt_weighted_upper, trapz};
pub use roots::{bisect, illinois, newton_bisect};
pub use tridiag::solve_tridiagonal;
