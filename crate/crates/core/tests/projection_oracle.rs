//! Shadow parameters checked against an explicit 3D construction: points of
//! the latitude circle are rotated with the sphere, dropped onto the plane,
//! and a general conic is fitted to the shadow by least squares.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use nalgebra::{DMatrix, Rotation3, Vector3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use envelope_core::projection::{project_latitude_circle, FE_TILT};
use envelope_core::{null_isocline_points, ImplicitFamily};

struct FittedEllipse {
    center_x: f64,
    center_y: f64,
    semi_x: f64,
    semi_y: f64,
    cross_term: f64,
}

fn shadow_points(latitude: f64, tilt: f64, n: usize) -> Vec<(f64, f64)> {
    let rotation = Rotation3::from_axis_angle(&Vector3::y_axis(), tilt);
    (0..n)
        .map(|k| {
            let phi = TAU * k as f64 / n as f64;
            let body = Vector3::new(latitude.cos() * phi.cos(), latitude.cos() * phi.sin(), latitude.sin());
            let world = rotation * body;
            (world.x, world.y)
        })
        .collect()
}

/// Fits `a x² + b xy + c y² + d x + e y + f = 0` by taking the right
/// singular vector of the design matrix with the smallest singular value.
fn fit_conic(points: &[(f64, f64)]) -> FittedEllipse {
    let design = DMatrix::from_fn(points.len(), 6, |i, j| {
        let (x, y) = points[i];
        [x * x, x * y, y * y, x, y, 1.0][j]
    });
    let svd = design.svd(false, true);
    let v_t = svd.v_t.unwrap();
    let smallest = (0..6)
        .min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))
        .unwrap();
    let row = v_t.row(smallest);
    let (a, b, c, d, e, f) = (row[0], row[1], row[2], row[3], row[4], row[5]);

    let det = 4.0 * a * c - b * b;
    let center_x = (b * e - 2.0 * c * d) / det;
    let center_y = (b * d - 2.0 * a * e) / det;
    let level = a * center_x * center_x + b * center_x * center_y + c * center_y * center_y
        + d * center_x
        + e * center_y
        + f;
    FittedEllipse {
        center_x,
        center_y,
        semi_x: (-level / a).sqrt(),
        semi_y: (-level / c).sqrt(),
        cross_term: b / a.abs().max(c.abs()),
    }
}

#[test]
fn shadow_parameters_match_the_3d_construction() {
    let mut rng = StdRng::seed_from_u64(0x5ad0);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        // the fit needs a proper ellipse, so flat shadows are avoided
        let latitude = rng.gen_range(-1.45..1.45);
        let tilt = rng.gen_range(0.0..1.45);
        let fitted = fit_conic(&shadow_points(latitude, tilt, 48));
        let closed = project_latitude_circle(latitude, tilt).unwrap();
        assert!(fitted.cross_term.abs() < 1e-9);
        assert!(fitted.center_y.abs() < 1e-9);
        for err in [
            fitted.center_x - closed.center_x,
            fitted.semi_x - closed.semi_x,
            fitted.semi_y - closed.semi_y,
        ] {
            worst = worst.max(err.abs());
        }
    }
    println!("worst shadow-parameter deviation {worst:.3e}");
    assert!(worst <= 1e-9);
}

#[test]
fn poles_collapse_to_points() {
    for (lat, sign) in [(FRAC_PI_2, 1.0), (-FRAC_PI_2, -1.0)] {
        let e = project_latitude_circle(lat, FE_TILT).unwrap();
        assert_eq!((e.semi_x, e.semi_y), (0.0, 0.0));
        assert!((e.center_x - sign * FE_TILT.sin()).abs() < 1e-15);
    }
}

#[test]
fn equator_shadow_is_the_null_isocline_of_the_ellipses() {
    let on_equator_shadow = |x: f64, y: f64| (2.0 * x * x + y * y - 1.0).abs();

    let equator = project_latitude_circle(0.0, FRAC_PI_4).unwrap();
    let worst_equator = (0..256)
        .map(|k| equator.point_at(TAU * k as f64 / 256.0))
        .map(|p| on_equator_shadow(p.x, p.y))
        .fold(0.0, f64::max);
    assert!(worst_equator <= 1e-12);

    let fe = ImplicitFamily::ellipses();
    let (lo, hi) = fe.alpha_range();
    let mut worst = 0.0_f64;
    for k in 1..400 {
        let a = lo + (hi - lo) * k as f64 / 400.0;
        for p in null_isocline_points(&fe, a).unwrap() {
            worst = worst.max(on_equator_shadow(p.x, p.y));
        }
    }
    assert!(worst <= 1e-9, "{worst}");
}
