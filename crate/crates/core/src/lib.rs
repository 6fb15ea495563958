//! Envelopes and isoclines of one-parameter families of implicit plane
//! curves.
//!
//! The envelope of the circle family `(x−α)² + y² = 1 − α²` is computed four
//! independent ways, each in its own module:
//!
//! - [`classical`]: simultaneous roots of `f` and `∂f/∂α`, for any family;
//! - [`radial`]: the outermost family point along every ray from the origin;
//! - [`limit`]: limits of intersections of neighbouring circles;
//! - [`projection`]: shadows of a tilted sphere's latitude circles, stretched.
//!
//! All four land on the ellipse `x²/2 + y² = 1`. The [`io`] module samples
//! families, writes CSV and SVG, and runs the cross-method comparison used by
//! the `envelope` binary.

pub mod classical;
pub mod error;
pub mod exec;
pub mod family;
pub mod io;
pub mod limit;
pub mod numeric;
pub mod projection;
pub mod radial;

pub use classical::{classical_envelope, classical_point_for_alpha, d_residual_d_alpha, ClassicalSolverConfig};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use family::{
    analytic_ellipse, analytic_envelope_residual, family_residual, null_isocline_points, radius_of_alpha,
    stretch_x, BoundaryPoint, EnvelopeCurve, ImplicitFamily, Method, Point, POINT_ON_CURVE_TOL,
};
pub use limit::{hausdorff_distance, limit_boundary_point, neighbor_intersection, polygonal_envelope};
pub use radial::{alpha_max_for_slope, boundary_x_for_slope, radial_brute_force, radial_envelope, RayDirection};
