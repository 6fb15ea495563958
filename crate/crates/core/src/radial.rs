//! Envelope as the radially outermost point of `F_C` in every direction.
//!
//! For a ray `y = m·x` the farthest intersection over all members has the
//! closed forms `α_max(m) = 1 / (2√(m² + ½))` and `x_b(m) = 1 / √(m² + ½)`.
//! [`radial_brute_force`] recovers the same points by direct maximization and
//! serves as the independent check on those closed forms.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::exec::{map_range, Strategy};
use crate::family::{analytic_envelope_residual, BoundaryPoint, EnvelopeCurve, Method, Point};
use crate::numeric::{golden_max, linspace};

const VERTICAL_EPS: f64 = 1e-12;

/// A direction in the plane. The slope is kept only for non-vertical rays.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayDirection {
    theta: f64,
    slope: Option<f64>,
}

impl RayDirection {
    /// Direction at angle `theta`, normalized into `[0, 2π)`.
    pub fn from_angle(theta: f64) -> Self {
        let theta = theta.rem_euclid(TAU);
        let slope = (theta.cos().abs() > VERTICAL_EPS).then(|| theta.tan());
        RayDirection { theta, slope }
    }

    /// Direction `atan(m)`, pointing into the right half-plane.
    pub fn from_slope(m: f64) -> Self {
        RayDirection {
            theta: m.atan().rem_euclid(TAU),
            slope: Some(m),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn slope(&self) -> Option<f64> {
        self.slope
    }

    pub fn is_vertical(&self) -> bool {
        self.slope.is_none()
    }
}

/// Both roots of `(m²+1)x² − 2αx + 2α² − 1 = 0`, the abscissae where line
/// `y = m·x` meets `C_α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayCircleIntersection {
    pub x_plus: Option<f64>,
    pub x_minus: Option<f64>,
    pub alpha: f64,
    pub discriminant: f64,
}

pub fn ray_circle_intersect(alpha: f64, ray: RayDirection) -> Result<RayCircleIntersection> {
    if !(alpha.abs() <= 1.0) {
        return Err(Error::domain("alpha", alpha, "[-1, 1]"));
    }
    let Some(m) = ray.slope else {
        return Err(Error::domain(
            "theta",
            ray.theta,
            "non-vertical directions (use vertical_ray_intersect)",
        ));
    };
    let k = m * m + 1.0;
    let discriminant = alpha * alpha - k * (2.0 * alpha * alpha - 1.0);
    let (x_plus, x_minus) = if discriminant >= 0.0 {
        let s = discriminant.sqrt();
        (Some((alpha + s) / k), Some((alpha - s) / k))
    } else {
        (None, None)
    };
    Ok(RayCircleIntersection {
        x_plus,
        x_minus,
        alpha,
        discriminant,
    })
}

/// Where the upward vertical ray `x = 0, y ≥ 0` meets `C_α`, if it does.
pub fn vertical_ray_intersect(alpha: f64) -> Option<Point> {
    if !(alpha.abs() <= 1.0) {
        return None;
    }
    let h = 1.0 - 2.0 * alpha * alpha;
    (h >= 0.0).then(|| Point::new(0.0, h.sqrt()))
}

/// `√(2m² + 1)` without overflow for large slopes.
fn slope_norm(m: f64) -> f64 {
    (SQRT_2 * m).hypot(1.0)
}

/// The member that holds the boundary point in direction `m`,
/// `1 / (2√(m² + ½))`.
pub fn alpha_max_for_slope(m: f64) -> f64 {
    FRAC_1_SQRT_2 / slope_norm(m)
}

/// Abscissa of the boundary point in direction `m`, `1 / √(m² + ½)`; the
/// point itself is `(x_b, m·x_b)`.
pub fn boundary_x_for_slope(m: f64) -> f64 {
    SQRT_2 / slope_norm(m)
}

/// Boundary point in direction `theta` from the closed forms.
pub fn radial_point(theta: f64) -> BoundaryPoint {
    let ray = RayDirection::from_angle(theta);
    if ray.is_vertical() {
        // the outermost vertical hit is on C_0
        let top = vertical_ray_intersect(0.0).expect("C_0 crosses the y axis");
        let y = if ray.theta.sin() > 0.0 { top.y } else { -top.y };
        return BoundaryPoint::new(0.0, y, 0.0, Method::Radial);
    }
    let m = ray.slope.expect("non-vertical");
    let x = boundary_x_for_slope(m);
    let alpha = alpha_max_for_slope(m);
    if ray.theta.cos() > 0.0 {
        BoundaryPoint::new(x, m * x, alpha, Method::Radial)
    } else {
        // left half-plane: mirror x → −x, α → −α
        BoundaryPoint::new(-x, -m * x, -alpha, Method::Radial)
    }
}

/// Closed-form radial envelope over `theta_grid_n` equally spaced directions.
pub fn radial_envelope(theta_grid_n: usize) -> Result<EnvelopeCurve> {
    radial_envelope_with(theta_grid_n, Strategy::default())
}

pub fn radial_envelope_with(theta_grid_n: usize, strategy: Strategy) -> Result<EnvelopeCurve> {
    if theta_grid_n < 4 {
        return Err(Error::Config(format!(
            "theta_grid_n must be >= 4, got {theta_grid_n}"
        )));
    }
    let points = map_range(theta_grid_n, strategy, |k| {
        radial_point(TAU * k as f64 / theta_grid_n as f64)
    });
    Ok(EnvelopeCurve::new(
        points,
        Method::Radial,
        Some(&analytic_envelope_residual),
    ))
}

/// Distance along the ray at angle `theta` to its farthest crossing of
/// `C_α`, or `None` when the ray misses the member.
fn ray_reach(alpha: f64, cos_t: f64) -> Option<f64> {
    // |t·u − (α, 0)|² = 1 − α²  ⇔  t² − 2α cosθ t + 2α² − 1 = 0
    let disc = alpha * alpha * cos_t * cos_t - (2.0 * alpha * alpha - 1.0);
    if disc < 0.0 {
        return None;
    }
    let t = alpha * cos_t + disc.sqrt();
    (t >= 0.0).then_some(t)
}

/// Outermost point of `F_C` in direction `theta`, by scanning
/// `alpha_grid_n` members and refining the best one by golden-section search.
pub fn radial_brute_force(theta: f64, alpha_grid_n: usize) -> Result<BoundaryPoint> {
    if alpha_grid_n < 100 {
        return Err(Error::Config(format!(
            "alpha_grid_n must be >= 100, got {alpha_grid_n}"
        )));
    }
    let (sin_t, cos_t) = theta.sin_cos();
    let reach = |a: f64| ray_reach(a, cos_t).unwrap_or(f64::NEG_INFINITY);

    let grid = linspace(-1.0, 1.0, alpha_grid_n);
    let best = (0..grid.len())
        .max_by(|&i, &j| reach(grid[i]).total_cmp(&reach(grid[j])))
        .expect("nonempty grid");
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let (alpha, t) = golden_max(reach, lo, hi, 60);
    let (alpha, t) = if reach(grid[best]) > t {
        (grid[best], reach(grid[best]))
    } else {
        (alpha, t)
    };
    Ok(BoundaryPoint::new(t * cos_t, t * sin_t, alpha, Method::Radial))
}
