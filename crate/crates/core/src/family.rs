//! Implicit one-parameter families of plane curves.
//!
//! A family is a residual `f(x, y, α)` together with its α-domain; member
//! `C_α` is the zero set of `f(·, ·, α)`. Two concrete families are provided:
//! the circles `(x−α)² + y² = 1 − α²` ([`ImplicitFamily::circles`]) and the
//! ellipses `2(x−α)² + y² = 1 − 2α²` ([`ImplicitFamily::ellipses`]).

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_max};

/// Absolute tolerance for "this point lies on that member". All geometry in
/// this crate is unit scale.
pub const POINT_ON_CURVE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Polar angle about the origin in `[0, 2π)`.
    pub fn polar_angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

type ResidualFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;
type CenterFn = dyn Fn(f64) -> Point + Send + Sync;
type CurveFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A one-parameter family in level-set form `f(x, y, α) = 0`.
///
/// Besides the residual, a family carries a `center` map returning a point
/// strictly inside each nondegenerate member. Members are parameterized by
/// angle about that point, which is how boundaries and extrema are located
/// without derivatives of the residual.
#[derive(Clone)]
pub struct ImplicitFamily {
    name: String,
    alpha_min: f64,
    alpha_max: f64,
    residual: Arc<ResidualFn>,
    center: Arc<CenterFn>,
    contributing: Option<(f64, f64)>,
    envelope: Option<Arc<CurveFn>>,
}

impl fmt::Debug for ImplicitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImplicitFamily")
            .field("name", &self.name)
            .field("alpha_min", &self.alpha_min)
            .field("alpha_max", &self.alpha_max)
            .field("contributing", &self.contributing)
            .finish_non_exhaustive()
    }
}

impl ImplicitFamily {
    pub fn new<R, C>(
        name: impl Into<String>,
        alpha_min: f64,
        alpha_max: f64,
        residual: R,
        center: C,
    ) -> Result<Self>
    where
        R: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
        C: Fn(f64) -> Point + Send + Sync + 'static,
    {
        if !(alpha_min < alpha_max) || !alpha_min.is_finite() || !alpha_max.is_finite() {
            return Err(Error::Config(format!(
                "alpha range [{alpha_min}, {alpha_max}] must be finite with min < max"
            )));
        }
        Ok(ImplicitFamily {
            name: name.into(),
            alpha_min,
            alpha_max,
            residual: Arc::new(residual),
            center: Arc::new(center),
            contributing: None,
            envelope: None,
        })
    }

    /// Restricts the α sub-range swept by envelope solvers to the members
    /// that actually touch the envelope.
    pub fn with_contributing_range(mut self, lo: f64, hi: f64) -> Self {
        self.contributing = Some((lo.max(self.alpha_min), hi.min(self.alpha_max)));
        self
    }

    /// Attaches the closed-form envelope residual used to score computed
    /// envelopes.
    pub fn with_known_envelope<E>(mut self, envelope: E) -> Self
    where
        E: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        self.envelope = Some(Arc::new(envelope));
        self
    }

    /// `F_C`: circles centred at `(α, 0)` of radius `√(1 − α²)`, α ∈ [−1, 1].
    pub fn circles() -> Self {
        ImplicitFamily::new(
            "fc",
            -1.0,
            1.0,
            |x, y, a| (x - a) * (x - a) + y * y - (1.0 - a * a),
            |a| Point::new(a, 0.0),
        )
        .expect("static range")
        .with_contributing_range(-FRAC_1_SQRT_2, FRAC_1_SQRT_2)
        .with_known_envelope(analytic_envelope_residual)
    }

    /// `F_E`: ellipses `2(x−α)² + y² = 1 − 2α²`, α ∈ [−1/√2, 1/√2].
    pub fn ellipses() -> Self {
        ImplicitFamily::new(
            "fe",
            -FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            |x, y, a| 2.0 * (x - a) * (x - a) + y * y - (1.0 - 2.0 * a * a),
            |a| Point::new(a, 0.0),
        )
        .expect("static range")
        .with_contributing_range(-0.5, 0.5)
        .with_known_envelope(|x, y| x * x + y * y - 1.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha_range(&self) -> (f64, f64) {
        (self.alpha_min, self.alpha_max)
    }

    /// α sub-range whose members touch the envelope; the full domain when
    /// not known.
    pub fn contributing_range(&self) -> (f64, f64) {
        self.contributing.unwrap_or((self.alpha_min, self.alpha_max))
    }

    pub fn contains_alpha(&self, alpha: f64) -> bool {
        alpha >= self.alpha_min && alpha <= self.alpha_max
    }

    pub(crate) fn check_alpha(&self, alpha: f64) -> Result<()> {
        if self.contains_alpha(alpha) {
            Ok(())
        } else {
            Err(Error::domain("alpha", alpha, "the family's alpha range"))
        }
    }

    /// Signed residual of `(x, y)` against member `C_α`.
    pub fn residual(&self, x: f64, y: f64, alpha: f64) -> Result<f64> {
        self.check_alpha(alpha)?;
        Ok((self.residual)(x, y, alpha))
    }

    #[inline]
    pub(crate) fn eval(&self, x: f64, y: f64, alpha: f64) -> f64 {
        (self.residual)(x, y, alpha)
    }

    pub fn center(&self, alpha: f64) -> Point {
        (self.center)(alpha)
    }

    /// Residual of the closed-form envelope, when the family has one.
    pub fn known_envelope_residual(&self, x: f64, y: f64) -> Option<f64> {
        self.envelope.as_ref().map(|e| e(x, y))
    }

    pub fn has_known_envelope(&self) -> bool {
        self.envelope.is_some()
    }

    /// A member is degenerate when its center is not strictly inside it
    /// (zero extent, e.g. the point circles at α = ±1).
    pub fn is_degenerate(&self, alpha: f64) -> bool {
        let c = self.center(alpha);
        !(self.eval(c.x, c.y, alpha) < -POINT_ON_CURVE_TOL)
    }

    pub fn on_member(&self, p: Point, alpha: f64) -> bool {
        self.contains_alpha(alpha) && self.eval(p.x, p.y, alpha).abs() <= POINT_ON_CURVE_TOL
    }

    /// The point of `C_α` hit by the ray from the member's center at angle
    /// `phi`. Degenerate members return their center.
    pub fn member_point(&self, alpha: f64, phi: f64) -> Option<Point> {
        let c = self.center(alpha);
        if self.is_degenerate(alpha) {
            return Some(c);
        }
        let (s, co) = phi.sin_cos();
        let t = outward_root(|t| self.eval(c.x + t * co, c.y + t * s, alpha))?;
        Some(Point::new(c.x + t * co, c.y + t * s))
    }
}

/// Smallest positive `t` where `g` turns positive, given `g(0) < 0`.
pub(crate) fn outward_root<G: Fn(f64) -> f64>(g: G) -> Option<f64> {
    let mut hi = 1.0;
    let mut expansions = 0;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 64 {
            return None;
        }
    }
    // tighten from below so the first crossing is bracketed
    let mut lo = 0.0;
    let step = hi / 64.0;
    for k in 1..64 {
        let t = step * k as f64;
        if g(t) > 0.0 {
            hi = t;
            break;
        }
        lo = t;
    }
    Some(bisect(&g, lo, hi))
}

/// Signed residual of `(x, y)` against member `C_α` of `family`.
pub fn family_residual(family: &ImplicitFamily, x: f64, y: f64, alpha: f64) -> Result<f64> {
    family.residual(x, y, alpha)
}

/// Radius law of `F_C`: `r(α) = √(1 − α²)`.
pub fn radius_of_alpha(alpha: f64) -> Result<f64> {
    if !(alpha.abs() <= 1.0) {
        return Err(Error::domain("alpha", alpha, "[-1, 1]"));
    }
    Ok(((1.0 - alpha) * (1.0 + alpha)).sqrt())
}

/// Scales the x coordinate by `factor`.
pub fn stretch_x(p: Point, factor: f64) -> Result<Point> {
    if !(factor > 0.0) || !factor.is_finite() {
        return Err(Error::domain("factor", factor, "(0, inf)"));
    }
    Ok(Point::new(p.x * factor, p.y))
}

/// Residual of the elliptical envelope `x²/2 + y² = 1` of `F_C`.
pub fn analytic_envelope_residual(x: f64, y: f64) -> f64 {
    0.5 * x * x + y * y - 1.0
}

/// Points of `C_α` with zero slope, i.e. the extrema of `y` on the member,
/// returned as `[top, bottom]`. Degenerate members have no slope and yield
/// an empty list.
pub fn null_isocline_points(family: &ImplicitFamily, alpha: f64) -> Result<Vec<Point>> {
    family.check_alpha(alpha)?;
    if family.is_degenerate(alpha) {
        return Ok(Vec::new());
    }

    const SWEEP: usize = 64;
    let y_at = |phi: f64| {
        family
            .member_point(alpha, phi)
            .map_or(f64::NAN, |p| p.y)
    };
    let ys: Vec<f64> = (0..SWEEP).map(|k| y_at(TAU * k as f64 / SWEEP as f64)).collect();
    let argext = |sign: f64| {
        (0..SWEEP)
            .max_by(|&i, &j| (sign * ys[i]).total_cmp(&(sign * ys[j])))
            .expect("nonempty sweep")
    };

    let mut out = Vec::with_capacity(2);
    for sign in [1.0, -1.0] {
        let k = argext(sign) as f64;
        let step = TAU / SWEEP as f64;
        let (phi, _) = golden_max(|phi| sign * y_at(phi), (k - 1.0) * step, (k + 1.0) * step, 60);
        let Some(rough) = family.member_point(alpha, phi) else {
            continue;
        };
        out.push(polish_extremum(family, alpha, rough, sign).unwrap_or(rough));
    }
    Ok(out)
}

/// Refines a y-extremum of `C_α` by solving `∂f/∂x = 0` along the branch
/// of the member above (`sign > 0`) or below the center.
fn polish_extremum(family: &ImplicitFamily, alpha: f64, rough: Point, sign: f64) -> Option<Point> {
    let c = family.center(alpha);
    let half_height = (rough.y - c.y).abs();
    if half_height == 0.0 {
        return None;
    }
    let branch = |x: f64| -> Option<f64> {
        if !(family.eval(x, c.y, alpha) < 0.0) {
            return None;
        }
        let t = outward_root(|t| family.eval(x, c.y + sign * t, alpha))?;
        Some(c.y + sign * t)
    };
    let h = 1e-5 * half_height;
    let slope = |x: f64| -> Option<f64> {
        let y = branch(x)?;
        Some((family.eval(x + h, y, alpha) - family.eval(x - h, y, alpha)) / (2.0 * h))
    };

    let mut w = 1e-4 * half_height;
    let (lo, hi) = loop {
        let (lo, hi) = (rough.x - w, rough.x + w);
        if let (Some(a), Some(b)) = (slope(lo), slope(hi)) {
            if (a < 0.0) != (b < 0.0) || a == 0.0 || b == 0.0 {
                break (lo, hi);
            }
        }
        w *= 4.0;
        if w > half_height {
            return None;
        }
    };
    let x = bisect(|x| slope(x).unwrap_or(f64::NAN), lo, hi);
    branch(x).map(|y| Point::new(x, y))
}

/// Which construction produced a boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Classical,
    Radial,
    Limit,
    Projection,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Classical,
        Method::Radial,
        Method::Limit,
        Method::Projection,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::Radial => "radial",
            Method::Limit => "limit",
            Method::Projection => "projection",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// An envelope point and the member parameter that generated it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub method: Method,
}

impl BoundaryPoint {
    pub fn new(x: f64, y: f64, alpha: f64, method: Method) -> Self {
        BoundaryPoint { x, y, alpha, method }
    }

    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// A closed envelope polyline, sorted by polar angle about the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeCurve {
    pub points: Vec<BoundaryPoint>,
    /// Largest `|residual|` against the closed-form envelope, if one was
    /// supplied.
    pub max_abs_residual: Option<f64>,
    pub method: Method,
}

impl EnvelopeCurve {
    /// Sorts `points` by polar angle, drops points sharing an angle with an
    /// earlier one, and scores them against `envelope` when given.
    pub fn new(
        mut points: Vec<BoundaryPoint>,
        method: Method,
        envelope: Option<&dyn Fn(f64, f64) -> f64>,
    ) -> Self {
        points.sort_by(|a, b| a.point().polar_angle().total_cmp(&b.point().polar_angle()));
        points.dedup_by(|b, a| a.point().polar_angle() == b.point().polar_angle());
        let max_abs_residual = envelope.map(|e| {
            points
                .iter()
                .map(|p| e(p.x, p.y).abs())
                .fold(0.0, f64::max)
        });
        EnvelopeCurve {
            points,
            max_abs_residual,
            method,
        }
    }

    /// Builds a curve scored against `family`'s closed-form envelope.
    pub fn for_family(points: Vec<BoundaryPoint>, method: Method, family: &ImplicitFamily) -> Self {
        match &family.envelope {
            Some(e) => EnvelopeCurve::new(points, method, Some(e.as_ref())),
            None => EnvelopeCurve::new(points, method, None),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xy(&self) -> Vec<Point> {
        self.points.iter().map(BoundaryPoint::point).collect()
    }
}

/// Densely sampled ellipse `x²/2 + y² = 1`, tagged with the classical
/// generating parameter `α = x/2`.
pub fn analytic_ellipse(samples: usize) -> EnvelopeCurve {
    let points = (0..samples)
        .map(|k| {
            let t = TAU * k as f64 / samples as f64;
            let x = 2f64.sqrt() * t.cos();
            BoundaryPoint::new(x, t.sin(), 0.5 * x, Method::Classical)
        })
        .collect();
    EnvelopeCurve::new(points, Method::Classical, Some(&analytic_envelope_residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        assert_eq!(radius_of_alpha(0.0).unwrap(), 1.0);
        assert_eq!(radius_of_alpha(1.0).unwrap(), 0.0);
        assert_eq!(radius_of_alpha(-1.0).unwrap(), 0.0);
        assert!((radius_of_alpha(0.6).unwrap() - 0.8).abs() < 1e-15);
        assert!(matches!(radius_of_alpha(1.0 + 1e-12), Err(Error::Domain { .. })));
        assert!(radius_of_alpha(f64::NAN).is_err());
    }

    #[test]
    fn residual_examples() {
        let fc = ImplicitFamily::circles();
        let fe = ImplicitFamily::ellipses();
        assert_eq!(family_residual(&fc, 0.0, 1.0, 0.0).unwrap(), 0.0);
        // (1 − 0.5)² + 0.5² + 0.5² − 1
        assert!((family_residual(&fc, 1.0, 0.5, 0.5).unwrap() - -0.25).abs() < 1e-15);
        assert_eq!(family_residual(&fe, 0.0, 1.0, 0.0).unwrap(), 0.0);
        assert!(family_residual(&fc, 0.0, 0.0, 1.5).is_err());
        assert!(family_residual(&fe, 0.0, 0.0, 0.75).is_err());
    }

    #[test]
    fn family_rejects_empty_range() {
        let f = ImplicitFamily::new("bad", 1.0, 1.0, |_, _, _| 0.0, |_| Point::default());
        assert!(matches!(f, Err(Error::Config(_))));
    }

    #[test]
    fn stretch_examples() {
        let p = stretch_x(Point::new(1.0, 0.0), 2f64.sqrt()).unwrap();
        assert_eq!(p, Point::new(2f64.sqrt(), 0.0));
        assert_eq!(stretch_x(Point::new(0.0, 1.0), 2f64.sqrt()).unwrap(), Point::new(0.0, 1.0));
        assert_eq!(stretch_x(Point::new(0.5, 0.5), 2.0).unwrap(), Point::new(1.0, 0.5));
        assert!(stretch_x(Point::new(1.0, 1.0), 0.0).is_err());
        assert!(stretch_x(Point::new(1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn envelope_residual_examples() {
        assert!(analytic_envelope_residual(2f64.sqrt(), 0.0).abs() < 1e-15);
        assert_eq!(analytic_envelope_residual(0.0, 1.0), 0.0);
        assert_eq!(analytic_envelope_residual(0.0, 0.0), -1.0);
    }

    /// Brute-force y extrema over a dense parameterization of the member.
    fn scan_extrema(center_x: f64, semi_x: f64, semi_y: f64) -> (Point, Point) {
        let n = 200_000;
        let mut top = Point::new(0.0, f64::NEG_INFINITY);
        let mut bottom = Point::new(0.0, f64::INFINITY);
        for k in 0..n {
            let t = TAU * k as f64 / n as f64;
            let p = Point::new(center_x + semi_x * t.cos(), semi_y * t.sin());
            if p.y > top.y {
                top = p;
            }
            if p.y < bottom.y {
                bottom = p;
            }
        }
        (top, bottom)
    }

    #[test]
    fn isocline_examples() {
        let fc = ImplicitFamily::circles();
        let pts = null_isocline_points(&fc, 0.0).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts[0].distance(Point::new(0.0, 1.0)) < 1e-9);
        assert!(pts[1].distance(Point::new(0.0, -1.0)) < 1e-9);

        let (top, bottom) = scan_extrema(0.6, 0.8, 0.8);
        let pts = null_isocline_points(&fc, 0.6).unwrap();
        assert!(pts[0].distance(top) < 1e-6, "{:?} vs {top:?}", pts[0]);
        assert!(pts[1].distance(bottom) < 1e-6);
        assert!(pts[0].distance(Point::new(0.6, 0.8)) < 1e-9);

        let fe = ImplicitFamily::ellipses();
        let r = (1.0f64 - 2.0 * 0.25).sqrt();
        let (top, bottom) = scan_extrema(0.5, r / 2f64.sqrt(), r);
        let pts = null_isocline_points(&fe, 0.5).unwrap();
        assert!(pts[0].distance(top) < 1e-6);
        assert!(pts[1].distance(bottom) < 1e-6);
        assert!(pts[0].distance(Point::new(0.5, 0.5f64.sqrt())) < 1e-9);
    }

    #[test]
    fn degenerate_members_have_no_isocline() {
        let fc = ImplicitFamily::circles();
        assert!(null_isocline_points(&fc, 1.0).unwrap().is_empty());
        assert!(null_isocline_points(&fc, -1.0).unwrap().is_empty());
        let fe = ImplicitFamily::ellipses();
        assert!(null_isocline_points(&fe, FRAC_1_SQRT_2).unwrap().is_empty());
        assert!(null_isocline_points(&fc, 1.2).is_err());
    }

    #[test]
    fn member_points_lie_on_member() {
        let fc = ImplicitFamily::circles();
        for k in 0..32 {
            let phi = TAU * k as f64 / 32.0;
            let p = fc.member_point(0.3, phi).unwrap();
            assert!(fc.on_member(p, 0.3));
            assert!((p.distance(Point::new(0.3, 0.0)) - radius_of_alpha(0.3).unwrap()).abs() < 1e-15);
        }
        assert_eq!(fc.member_point(1.0, 0.4), Some(Point::new(1.0, 0.0)));
    }

    #[test]
    fn envelope_curve_sorts_and_dedups() {
        let pts = vec![
            BoundaryPoint::new(0.0, -1.0, 0.0, Method::Classical),
            BoundaryPoint::new(2f64.sqrt(), -0.0, 0.7, Method::Classical),
            BoundaryPoint::new(0.0, 1.0, 0.0, Method::Classical),
            BoundaryPoint::new(2f64.sqrt(), 0.0, 0.7, Method::Classical),
        ];
        let c = EnvelopeCurve::new(pts, Method::Classical, Some(&analytic_envelope_residual));
        assert_eq!(c.len(), 3);
        let angles: Vec<f64> = c.xy().iter().map(|p| p.polar_angle()).collect();
        assert!(angles.windows(2).all(|w| w[0] < w[1]));
        assert!(c.max_abs_residual.unwrap() < 1e-15);
        assert_eq!(EnvelopeCurve::new(vec![], Method::Radial, None).max_abs_residual, None);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("isocline".parse::<Method>().is_err());
    }
}
