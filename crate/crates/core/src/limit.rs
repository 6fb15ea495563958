//! Envelope points as limits of intersections of neighbouring circles of
//! `F_C`, and the finite-family approximation built from exterior arcs.
//!
//! Two neighbours `C_α` and `C_{α+δ}` meet at `x = 2α + δ` exactly, so the
//! abscissa is extrapolated to `δ = 0` by a linear fit. The squared ordinate
//! `y² = 1 − α² − (α+δ)²` is quadratic in δ and is extrapolated by a
//! quadratic fit. Extrapolating `y²` instead of `y` keeps the fit exact at
//! the cutoff `|α| = √2/2`, where `y(δ)` has a square-root singularity.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::error::{Error, Result};
use crate::exec::{map_slice, Strategy};
use crate::family::{analytic_envelope_residual, BoundaryPoint, EnvelopeCurve, Method, Point};
use crate::numeric::{linspace, PolyFit};

/// Smallest step accepted; below it the two-circle system loses most of its
/// digits to cancellation.
pub const DELTA_FLOOR: f64 = 1e-6;

/// Maximum absolute residual of the extrapolation fits.
pub const FIT_TOL: f64 = 1e-8;

const TOUCH_SLACK: f64 = 1e-12;

/// `0.1 / 2^k` for `k = 0..=6`.
pub fn default_delta_sequence() -> Vec<f64> {
    (0..7).map(|k| 0.1 / f64::from(1u32 << k)).collect()
}

/// `C_α ∩ C_{α+δ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NeighborIntersection {
    pub alpha: f64,
    pub delta: f64,
    pub x: f64,
    pub y_plus: f64,
    pub y_minus: f64,
}

pub fn neighbor_intersection(alpha: f64, delta: f64) -> Result<Option<NeighborIntersection>> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::domain("delta", delta, "nonzero finite values"));
    }
    if !(alpha.abs() <= 1.0) {
        return Err(Error::domain("alpha", alpha, "[-1, 1]"));
    }
    let neighbour = alpha + delta;
    if !(neighbour.abs() <= 1.0) {
        return Err(Error::domain("alpha + delta", neighbour, "[-1, 1]"));
    }
    let x = 2.0 * alpha + delta;
    let y2 = 1.0 - alpha * alpha - neighbour * neighbour;
    if y2 < 0.0 {
        return Ok(None);
    }
    let y = y2.sqrt();
    Ok(Some(NeighborIntersection {
        alpha,
        delta,
        x,
        y_plus: y,
        y_minus: -y,
    }))
}

fn validate_deltas(deltas: &[f64]) -> Result<()> {
    if deltas.len() < 4 {
        return Err(Error::Config(format!(
            "need at least 4 delta values, got {}",
            deltas.len()
        )));
    }
    if deltas.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(Error::Config("delta values must be positive and finite".into()));
    }
    if deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Config("delta values must be strictly decreasing".into()));
    }
    let smallest = deltas[deltas.len() - 1];
    if smallest < DELTA_FLOOR {
        return Err(Error::domain("delta", smallest, "[1e-6, inf)"));
    }
    Ok(())
}

/// The boundary points contributed by `C_α`, as the `δ → 0` limit of its
/// intersections with the neighbour on the side of the origin. `deltas` are
/// step magnitudes, strictly decreasing and no smaller than [`DELTA_FLOOR`].
///
/// Returns `None` when the limit does not exist: the intersections vanish
/// for the three smallest steps, or the extrapolated `y²` is negative.
pub fn limit_boundary_point(alpha: f64, deltas: &[f64]) -> Result<Option<[BoundaryPoint; 2]>> {
    if !(alpha.abs() <= 1.0) {
        return Err(Error::domain("alpha", alpha, "[-1, 1]"));
    }
    validate_deltas(deltas)?;
    let inward = if alpha > 0.0 { -1.0 } else { 1.0 };

    let mut hits = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let delta = inward * d;
        let hit = if (alpha + delta).abs() <= 1.0 {
            neighbor_intersection(alpha, delta)?
        } else {
            None
        };
        hits.push(hit);
    }
    if hits.iter().rev().take(3).all(Option::is_none) {
        return Ok(None);
    }

    let present: Vec<&NeighborIntersection> = hits.iter().flatten().collect();
    if present.len() < 4 {
        return Ok(None);
    }
    let ds: Vec<f64> = present.iter().map(|h| h.delta).collect();
    let xs: Vec<f64> = present.iter().map(|h| h.x).collect();
    let y2s: Vec<f64> = present.iter().map(|h| h.y_plus * h.y_plus).collect();

    let x_fit = PolyFit::fit(&ds, &xs, 1).ok_or(Error::LimitFit {
        alpha,
        residual: f64::NAN,
    })?;
    let y2_fit = PolyFit::fit(&ds, &y2s, 2).ok_or(Error::LimitFit {
        alpha,
        residual: f64::NAN,
    })?;
    let residual = x_fit.max_residual.max(y2_fit.max_residual);
    if !(residual <= FIT_TOL) {
        return Err(Error::LimitFit { alpha, residual });
    }

    let y2 = y2_fit.intercept();
    if y2 < -TOUCH_SLACK {
        return Ok(None);
    }
    let x = x_fit.intercept();
    let y = y2.max(0.0).sqrt();
    Ok(Some([
        BoundaryPoint::new(x, y, alpha, Method::Limit),
        BoundaryPoint::new(x, -y, alpha, Method::Limit),
    ]))
}

/// Limit-method envelope over `alpha_grid_n` members in `[−√2/2, √2/2]`,
/// using [`default_delta_sequence`].
pub fn limit_envelope(alpha_grid_n: usize) -> Result<EnvelopeCurve> {
    limit_envelope_with(alpha_grid_n, &default_delta_sequence(), Strategy::default())
}

pub fn limit_envelope_with(
    alpha_grid_n: usize,
    deltas: &[f64],
    strategy: Strategy,
) -> Result<EnvelopeCurve> {
    if alpha_grid_n < 2 {
        return Err(Error::Config(format!(
            "alpha_grid_n must be >= 2, got {alpha_grid_n}"
        )));
    }
    let alphas = linspace(-FRAC_1_SQRT_2, FRAC_1_SQRT_2, alpha_grid_n);
    let solved = map_slice(&alphas, strategy, |&a| limit_boundary_point(a, deltas));
    let mut points = Vec::with_capacity(2 * alphas.len());
    for pair in solved {
        if let Some(pair) = pair? {
            points.extend(pair);
        }
    }
    Ok(EnvelopeCurve::new(
        points,
        Method::Limit,
        Some(&analytic_envelope_residual),
    ))
}

/// Counter-clockwise circular arc of member `C_α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcSegment {
    pub alpha: f64,
    pub center: Point,
    pub radius: f64,
    /// Start angle about `center`, radians.
    pub start: f64,
    /// Counter-clockwise angular extent, radians.
    pub sweep: f64,
}

impl ArcSegment {
    pub fn point_at_angle(&self, phi: f64) -> Point {
        let (s, c) = phi.sin_cos();
        Point::new(self.center.x + self.radius * c, self.center.y + self.radius * s)
    }

    pub fn start_point(&self) -> Point {
        self.point_at_angle(self.start)
    }

    pub fn end_point(&self) -> Point {
        self.point_at_angle(self.start + self.sweep)
    }
}

/// Outline of finitely many `F_C` members: exterior arcs joined at the
/// intersections of adjacent circles, listed counter-clockwise starting with
/// the rightmost circle.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalEnvelope {
    pub circle_count: usize,
    pub arcs: Vec<ArcSegment>,
    /// `joints[i]` is where `arcs[i]` ends and `arcs[i + 1]` begins
    /// (cyclically).
    pub joints: Vec<Point>,
}

impl PolygonalEnvelope {
    /// Sum of arc sweeps plus the signed tangent turns at the joints.
    pub fn total_turning(&self) -> f64 {
        let n = self.arcs.len();
        let mut total: f64 = self.arcs.iter().map(|a| a.sweep).sum();
        for i in 0..n {
            let here = &self.arcs[i];
            let next = &self.arcs[(i + 1) % n];
            let turn = (next.start - (here.start + here.sweep)).rem_euclid(TAU);
            total += if turn > PI { turn - TAU } else { turn };
        }
        total
    }

    /// Samples `points_per_arc` points per arc (each arc's end is the next
    /// arc's start, so it is not repeated).
    pub fn sample(&self, points_per_arc: usize) -> EnvelopeCurve {
        let per = points_per_arc.max(1);
        let points = self
            .arcs
            .iter()
            .flat_map(|arc| {
                (0..per).map(move |j| {
                    let phi = arc.start + arc.sweep * j as f64 / per as f64;
                    let p = arc.point_at_angle(phi);
                    BoundaryPoint::new(p.x, p.y, arc.alpha, Method::Limit)
                })
            })
            .collect();
        EnvelopeCurve::new(points, Method::Limit, Some(&analytic_envelope_residual))
    }
}

/// Polygonal envelope of `circle_count` circles placed uniformly over the
/// contributing range `[−√2/2, √2/2]`.
pub fn polygonal_envelope(circle_count: usize) -> Result<PolygonalEnvelope> {
    if circle_count < 3 || circle_count.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "circle_count must be odd and >= 3, got {circle_count}"
        )));
    }
    let n = circle_count;
    let alphas = linspace(-FRAC_1_SQRT_2, FRAC_1_SQRT_2, n);
    let radius = |a: f64| ((1.0 - a) * (1.0 + a)).sqrt();
    // upper joint between circles k and k + 1
    let joint_y: Vec<f64> = (0..n - 1)
        .map(|k| (1.0 - alphas[k] * alphas[k] - alphas[k + 1] * alphas[k + 1]).max(0.0).sqrt())
        .collect();
    let arc = |k: usize, start: f64, end: f64| ArcSegment {
        alpha: alphas[k],
        center: Point::new(alphas[k], 0.0),
        radius: radius(alphas[k]),
        start,
        sweep: end - start,
    };

    let mut arcs = Vec::with_capacity(2 * n - 2);
    let mut joints = Vec::with_capacity(2 * n - 2);

    // rightmost circle, through (√2, 0)
    let top = joint_y[n - 2].atan2(alphas[n - 2]);
    arcs.push(arc(n - 1, -top, top));
    joints.push(Point::new(alphas[n - 2] + alphas[n - 1], joint_y[n - 2]));

    // upper arcs, right to left
    for k in (1..n - 1).rev() {
        let start = joint_y[k].atan2(alphas[k + 1]);
        let end = joint_y[k - 1].atan2(alphas[k - 1]);
        arcs.push(arc(k, start, end));
        joints.push(Point::new(alphas[k - 1] + alphas[k], joint_y[k - 1]));
    }

    // leftmost circle, through (−√2, 0)
    let start = joint_y[0].atan2(alphas[1]);
    arcs.push(arc(0, start, TAU - start));
    joints.push(Point::new(alphas[0] + alphas[1], -joint_y[0]));

    // lower arcs, left to right
    for k in 1..n - 1 {
        let start = TAU - joint_y[k - 1].atan2(alphas[k - 1]);
        let end = TAU - joint_y[k].atan2(alphas[k + 1]);
        arcs.push(arc(k, start, end));
        joints.push(Point::new(alphas[k] + alphas[k + 1], -joint_y[k]));
    }

    Ok(PolygonalEnvelope {
        circle_count,
        arcs,
        joints,
    })
}

fn point_segment_distance_sq(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let (px, py) = (p.x - a.x, p.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((px * dx + py * dy) / len2).clamp(0.0, 1.0)
    };
    let (ex, ey) = (px - t * dx, py - t * dy);
    ex * ex + ey * ey
}

/// Distance from `p` to the closed polyline through `pts` (a segment for two
/// points, the point itself for one).
fn distance_to_polyline(p: Point, pts: &[Point]) -> f64 {
    match pts.len() {
        0 => f64::INFINITY,
        1 => p.distance(pts[0]),
        2 => point_segment_distance_sq(p, pts[0], pts[1]).sqrt(),
        n => pts
            .windows(2)
            .map(|w| point_segment_distance_sq(p, w[0], w[1]))
            .fold(point_segment_distance_sq(p, pts[n - 1], pts[0]), f64::min)
            .sqrt(),
    }
}

/// Symmetric Hausdorff distance between two sampled closed curves, measuring
/// each curve's sample points against the other curve's closed polyline.
pub fn hausdorff_distance(a: &EnvelopeCurve, b: &EnvelopeCurve) -> Result<f64> {
    hausdorff_distance_with(a, b, Strategy::default())
}

pub fn hausdorff_distance_with(a: &EnvelopeCurve, b: &EnvelopeCurve, strategy: Strategy) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("hausdorff_distance needs two nonempty curves"));
    }
    let (pa, pb) = (a.xy(), b.xy());
    let directed = |from: &[Point], to: &[Point]| {
        map_slice(from, strategy, |&p| distance_to_polyline(p, to))
            .into_iter()
            .fold(0.0, f64::max)
    };
    Ok(directed(&pa, &pb).max(directed(&pb, &pa)))
}
