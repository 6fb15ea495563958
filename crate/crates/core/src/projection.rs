//! The ellipse family `F_E` as orthographic shadows of the latitude circles
//! of a unit sphere, and the √2 stretch that carries it onto `F_C`.
//!
//! Geometry: the sphere is centred above the plane origin, its N–S axis lies
//! in the x–z plane tilted by `tilt` from vertical, the A–B axis is parallel
//! to y, and light falls along −z. Latitude `λ` then projects to an
//! axis-aligned ellipse centred at `(sin λ · sin tilt, 0)` with semi-axes
//! `cos λ · cos tilt` (x) and `cos λ` (y). At `tilt = π/4` these are the
//! members of `F_E` with `α = sin λ / √2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2, TAU};

use crate::classical::{classical_points_for, ClassicalSolverConfig};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::family::{
    analytic_envelope_residual, stretch_x, BoundaryPoint, EnvelopeCurve, ImplicitFamily, Method, Point,
};
use crate::numeric::linspace;

/// The tilt at which the latitude shadows form `F_E`.
pub const FE_TILT: f64 = FRAC_PI_4;

#[derive(Clone, Debug, PartialEq)]
pub struct TiltedSphereConfig {
    pub tilt: f64,
    pub latitude_grid: Vec<f64>,
}

impl TiltedSphereConfig {
    pub fn new(tilt: f64, latitude_grid: Vec<f64>) -> Result<Self> {
        check_tilt(tilt)?;
        for &lat in &latitude_grid {
            check_latitude(lat)?;
        }
        Ok(TiltedSphereConfig { tilt, latitude_grid })
    }

    pub fn shadows(&self) -> Vec<ProjectedEllipse> {
        self.latitude_grid
            .iter()
            .map(|&lat| shadow(lat, self.tilt))
            .collect()
    }
}

fn check_tilt(tilt: f64) -> Result<()> {
    if (0.0..=FRAC_PI_2).contains(&tilt) {
        Ok(())
    } else {
        Err(Error::domain("tilt", tilt, "[0, pi/2]"))
    }
}

fn check_latitude(lat: f64) -> Result<()> {
    if lat.abs() <= FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::domain("latitude", lat, "[-pi/2, pi/2]"))
    }
}

/// Shadow of one latitude circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectedEllipse {
    pub center_x: f64,
    /// Semi-axis along x (shortened by the tilt).
    pub semi_x: f64,
    /// Semi-axis along y, equal to the circle's radius.
    pub semi_y: f64,
    pub latitude: f64,
}

impl ProjectedEllipse {
    pub fn point_at(&self, phi: f64) -> Point {
        let (s, c) = phi.sin_cos();
        Point::new(self.center_x + self.semi_x * c, self.semi_y * s)
    }
}

fn shadow(latitude: f64, tilt: f64) -> ProjectedEllipse {
    let radius = if latitude.abs() >= FRAC_PI_2 {
        0.0
    } else {
        latitude.cos()
    };
    ProjectedEllipse {
        center_x: latitude.sin() * tilt.sin(),
        semi_x: radius * tilt.cos(),
        semi_y: radius,
        latitude,
    }
}

pub fn project_latitude_circle(latitude: f64, tilt: f64) -> Result<ProjectedEllipse> {
    check_latitude(latitude)?;
    check_tilt(tilt)?;
    Ok(shadow(latitude, tilt))
}

/// The `F_E` member cast by one latitude at tilt π/4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeMember {
    pub latitude: f64,
    pub alpha: f64,
}

impl FeMember {
    /// `2(x−α)² + y² − (1 − 2α²)`.
    pub fn residual(&self, x: f64, y: f64) -> f64 {
        let a = self.alpha;
        2.0 * (x - a) * (x - a) + y * y - (1.0 - 2.0 * a * a)
    }
}

pub fn fe_member_from_latitude(latitude: f64) -> Result<FeMember> {
    check_latitude(latitude)?;
    Ok(FeMember {
        latitude,
        alpha: latitude.sin() / SQRT_2,
    })
}

/// Stretches each latitude's shadow by √2 in x and returns the largest
/// `F_C` residual at the stretched parameter `α√2`.
pub fn verify_stretch_congruence(latitude_grid: &[f64], sample_n: usize) -> Result<f64> {
    if sample_n < 8 {
        return Err(Error::Config(format!("sample_n must be >= 8, got {sample_n}")));
    }
    if latitude_grid.is_empty() {
        return Err(Error::Empty("latitude grid"));
    }
    let fc = ImplicitFamily::circles();
    let mut worst = 0.0_f64;
    for &lat in latitude_grid {
        let ellipse = project_latitude_circle(lat, FE_TILT)?;
        let member = fe_member_from_latitude(lat)?;
        let alpha = (member.alpha * SQRT_2).clamp(-1.0, 1.0);
        for k in 0..sample_n {
            let p = stretch_x(ellipse.point_at(TAU * k as f64 / sample_n as f64), SQRT_2)?;
            worst = worst.max(fc.residual(p.x, p.y, alpha)?.abs());
        }
    }
    Ok(worst)
}

/// Classical envelope of `F_E` restricted to the members cast by
/// `latitude_grid`.
pub fn fe_envelope(latitude_grid: &[f64], cfg: &ClassicalSolverConfig, strategy: Strategy) -> Result<EnvelopeCurve> {
    let alphas = latitude_grid
        .iter()
        .map(|&lat| fe_member_from_latitude(lat).map(|m| m.alpha))
        .collect::<Result<Vec<_>>>()?;
    classical_points_for(&ImplicitFamily::ellipses(), &alphas, cfg, strategy)
}

/// Largest `|x² + y² − 1|` over the envelope of the `F_E` members cast by
/// `latitude_grid`. A single member has no envelope; its own deviation from
/// the unit circle is reported instead.
pub fn fe_envelope_is_unit_circle(latitude_grid: &[f64]) -> Result<f64> {
    let unit = |p: Point| (p.x * p.x + p.y * p.y - 1.0).abs();
    match latitude_grid {
        [] => Err(Error::Empty("latitude grid")),
        [lat] => {
            let ellipse = project_latitude_circle(*lat, FE_TILT)?;
            Ok((0..256)
                .map(|k| unit(ellipse.point_at(TAU * k as f64 / 256.0)))
                .fold(0.0, f64::max))
        }
        grid => {
            let curve = fe_envelope(grid, &ClassicalSolverConfig::default(), Strategy::default())?;
            if curve.is_empty() {
                return Err(Error::Empty("no latitude in the grid reaches the envelope"));
            }
            Ok(curve.xy().into_iter().map(unit).fold(0.0, f64::max))
        }
    }
}

/// `latitude_grid_n` latitudes over `[−π/4, π/4]`, the band whose shadows
/// touch the unit-circle envelope of `F_E`.
pub fn contributing_latitudes(latitude_grid_n: usize) -> Vec<f64> {
    linspace(-FRAC_PI_4, FRAC_PI_4, latitude_grid_n)
}

/// The envelope of `F_C` obtained by stretching the envelope of `F_E` by √2.
pub fn projection_envelope(latitude_grid_n: usize) -> Result<EnvelopeCurve> {
    projection_envelope_with(latitude_grid_n, Strategy::default())
}

pub fn projection_envelope_with(latitude_grid_n: usize, strategy: Strategy) -> Result<EnvelopeCurve> {
    if latitude_grid_n < 2 {
        return Err(Error::Config(format!(
            "latitude grid needs >= 2 points, got {latitude_grid_n}"
        )));
    }
    let fe = fe_envelope(
        &contributing_latitudes(latitude_grid_n),
        &ClassicalSolverConfig::default(),
        strategy,
    )?;
    let points = fe
        .points
        .iter()
        .map(|p| {
            let q = stretch_x(p.point(), SQRT_2)?;
            let alpha = (p.alpha * SQRT_2).clamp(-1.0, 1.0);
            Ok(BoundaryPoint::new(q.x, q.y, alpha, Method::Projection))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnvelopeCurve::new(
        points,
        Method::Projection,
        Some(&analytic_envelope_residual),
    ))
}
