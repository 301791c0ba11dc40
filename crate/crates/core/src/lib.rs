//! Weighted sectional curvature of warped products with density.
//!
//! The crate computes, certifies, and synthesizes lower bounds on
//! `sec(U, V) + Hess f(V, V)` (and the strong variant with `+ df(V)²`)
//! for warped-product model metrics, together with the algebraic reduction
//! to finitely many test pairs, averaging and submersion tools, and
//! two-dimensional Gauss–Bonnet checks.
//!
//! Every numerical type is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`, which is what the linear feasibility
//! solver and the command-line driver use.

pub mod error;
pub mod jet;
pub mod poly;
pub mod scalar;
pub mod spline;
pub mod synthesis;

pub mod density;
pub mod metric;
pub mod profile;
pub mod bridge;

pub mod closure;
pub mod curvature;
pub mod descriptor;
pub mod obstruction;
pub mod quadrature;
pub mod polytope;
pub mod sampling;
pub mod gallery;
pub mod variation;
pub mod gauss_bonnet;
pub mod symmetry;

pub use error::{Error, Result};
pub use jet::Jet;
pub use scalar::{linspace, Real};

/// Residual tolerance for closure (boundary) conditions.
pub const EPS_BC: f64 = 1e-8;
/// Tolerance for sign checks and certification verdicts.
pub const EPS_POS: f64 = 1e-10;
/// Collar excluded near a collapsing end when series data is unavailable.
pub const EPS_END: f64 = 1e-3;
/// Distance from a collapsing end inside which limits replace quotients.
pub const SERIES_COLLAR: f64 = 1e-4;

pub type Profile = profile::RadialProfile<f64>;
pub type Metric = metric::WarpedMetric<f64>;
pub type Dens = density::Density<f64>;
