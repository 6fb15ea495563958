//! Envelope by the fundamental theorem of envelopes: points satisfying
//! `f = 0` and `∂f/∂α = 0` simultaneously, with the α-derivative taken by
//! central differences so any [`ImplicitFamily`] can be solved.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{map_slice, Strategy};
use crate::family::{outward_root, BoundaryPoint, EnvelopeCurve, ImplicitFamily, Method};
use crate::numeric::{bisect_newton, linspace};

/// A member whose center residual is within this of zero (from above) is
/// taken to touch the envelope in a single point.
const TOUCH_SLACK: f64 = 1e-12;

/// Subintervals scanned for a sign change of `∂f/∂α` across the member.
const SCAN_CELLS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalSolverConfig {
    /// Central-difference step in α.
    pub fd_step: f64,
    /// Number of α samples over the contributing range.
    pub alpha_grid_n: usize,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for ClassicalSolverConfig {
    fn default() -> Self {
        ClassicalSolverConfig {
            fd_step: 1e-4,
            alpha_grid_n: 201,
            newton_tol: 1e-12,
            newton_max_iter: 50,
        }
    }
}

impl ClassicalSolverConfig {
    pub fn with_grid(alpha_grid_n: usize) -> Self {
        ClassicalSolverConfig {
            alpha_grid_n,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fd_step > 0.0) {
            return Err(Error::Config(format!("fd_step must be > 0, got {}", self.fd_step)));
        }
        if !(self.newton_tol > 0.0) {
            return Err(Error::Config(format!(
                "newton_tol must be > 0, got {}",
                self.newton_tol
            )));
        }
        if self.alpha_grid_n < 2 {
            return Err(Error::Config(format!(
                "alpha_grid_n must be >= 2, got {}",
                self.alpha_grid_n
            )));
        }
        if self.newton_max_iter < 1 {
            return Err(Error::Config("newton_max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// `∂f/∂α` at `(x, y, α)`. Uses the central difference in the interior of
/// the α-domain and a second-order one-sided stencil within `fd_step` of an
/// end.
pub fn d_residual_d_alpha(
    family: &ImplicitFamily,
    x: f64,
    y: f64,
    alpha: f64,
    cfg: &ClassicalSolverConfig,
) -> Result<f64> {
    family.check_alpha(alpha)?;
    let h = cfg.fd_step;
    let (lo, hi) = family.alpha_range();
    if hi - lo < 2.0 * h {
        return Err(Error::Config(format!(
            "fd_step {h} is too large for the alpha range [{lo}, {hi}]"
        )));
    }
    let f = |a: f64| family.eval(x, y, a);
    let d = if alpha - h >= lo && alpha + h <= hi {
        (f(alpha + h) - f(alpha - h)) / (2.0 * h)
    } else if alpha - h < lo {
        (-3.0 * f(alpha) + 4.0 * f(alpha + h) - f(alpha + 2.0 * h)) / (2.0 * h)
    } else {
        (3.0 * f(alpha) - 4.0 * f(alpha - h) + f(alpha - 2.0 * h)) / (2.0 * h)
    };
    Ok(d)
}

/// The envelope points contributed by member `C_α`: `∂f/∂α = 0` is solved
/// for x along the member's center line, then `f = 0` for the upper and lower
/// y. Returns `None` when the member does not reach the envelope.
pub fn classical_point_for_alpha(
    family: &ImplicitFamily,
    alpha: f64,
    cfg: &ClassicalSolverConfig,
) -> Result<Option<[BoundaryPoint; 2]>> {
    family.check_alpha(alpha)?;
    cfg.validate()?;
    if family.is_degenerate(alpha) {
        return Ok(None);
    }

    let c = family.center(alpha);
    let (Some(right), Some(left)) = (family.member_point(alpha, 0.0), family.member_point(alpha, PI))
    else {
        return Ok(None);
    };
    let width = right.x - left.x;
    let (scan_lo, scan_hi) = (left.x - width, right.x + width);

    // errors cannot occur past check_alpha, and fd_step was validated
    let g = |x: f64| d_residual_d_alpha(family, x, c.y, alpha, cfg).unwrap_or(f64::NAN);
    let cells = linspace(scan_lo, scan_hi, SCAN_CELLS + 1);
    let values: Vec<f64> = cells.iter().map(|&x| g(x)).collect();
    let Some(k) = (0..SCAN_CELLS).find(|&k| {
        values[k] == 0.0 || (values[k] < 0.0) != (values[k + 1] < 0.0)
    }) else {
        return Ok(None);
    };

    let x_b = bisect_newton(g, cells[k], cells[k + 1], cfg.newton_tol, cfg.newton_max_iter)
        .map_err(|iterations| Error::NonConvergence { alpha, iterations })?;

    let f0 = family.eval(x_b, c.y, alpha);
    let (y_up, y_down) = if f0 > TOUCH_SLACK {
        return Ok(None);
    } else if f0 >= 0.0 {
        (c.y, c.y)
    } else {
        let up = outward_root(|t| family.eval(x_b, c.y + t, alpha));
        let down = outward_root(|t| family.eval(x_b, c.y - t, alpha));
        match (up, down) {
            (Some(u), Some(d)) => (c.y + u, c.y - d),
            _ => return Ok(None),
        }
    };
    Ok(Some([
        BoundaryPoint::new(x_b, y_up, alpha, Method::Classical),
        BoundaryPoint::new(x_b, y_down, alpha, Method::Classical),
    ]))
}

/// Classical envelope over `cfg.alpha_grid_n` samples of the family's
/// contributing α range.
pub fn classical_envelope(family: &ImplicitFamily, cfg: &ClassicalSolverConfig) -> Result<EnvelopeCurve> {
    classical_envelope_with(family, cfg, Strategy::default())
}

pub fn classical_envelope_with(
    family: &ImplicitFamily,
    cfg: &ClassicalSolverConfig,
    strategy: Strategy,
) -> Result<EnvelopeCurve> {
    cfg.validate()?;
    let (lo, hi) = family.contributing_range();
    let alphas = linspace(lo, hi, cfg.alpha_grid_n);
    classical_points_for(family, &alphas, cfg, strategy)
}

/// Classical envelope points for an explicit list of α values.
pub fn classical_points_for(
    family: &ImplicitFamily,
    alphas: &[f64],
    cfg: &ClassicalSolverConfig,
    strategy: Strategy,
) -> Result<EnvelopeCurve> {
    let solved = map_slice(alphas, strategy, |&a| classical_point_for_alpha(family, a, cfg));
    let mut points = Vec::with_capacity(2 * alphas.len());
    for pair in solved {
        if let Some(pair) = pair? {
            points.extend(pair);
        }
    }
    Ok(EnvelopeCurve::for_family(points, Method::Classical, family))
}
