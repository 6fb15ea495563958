//! Runs every envelope method on `F_C` and checks they agree.

use std::fmt;

use crate::classical::{classical_envelope_with, classical_point_for_alpha, ClassicalSolverConfig};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Strategy};
use crate::family::{BoundaryPoint, EnvelopeCurve, ImplicitFamily, Method};
use crate::limit::{default_delta_sequence, limit_envelope_with};
use crate::projection::projection_envelope_with;
use crate::radial::radial_envelope_with;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareTolerances {
    pub classical: f64,
    pub radial: f64,
    pub limit: f64,
    pub projection: f64,
    /// Bound on the distance between a method's point and the classical point
    /// of the same member.
    pub pairwise: f64,
}

impl Default for CompareTolerances {
    fn default() -> Self {
        CompareTolerances {
            classical: 1e-9,
            radial: 1e-9,
            limit: 1e-6,
            projection: 1e-9,
            pairwise: 1e-6,
        }
    }
}

impl CompareTolerances {
    pub fn uniform(tol: f64) -> Self {
        CompareTolerances {
            classical: tol,
            radial: tol,
            limit: tol,
            projection: tol,
            pairwise: tol,
        }
    }

    pub fn for_method(&self, method: Method) -> f64 {
        match method {
            Method::Classical => self.classical,
            Method::Radial => self.radial,
            Method::Limit => self.limit,
            Method::Projection => self.projection,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    pub points: usize,
    /// Largest `|x²/2 + y² − 1|`; `None` when the method failed.
    pub max_abs_residual: Option<f64>,
    pub tolerance: f64,
    pub error: Option<String>,
}

impl MethodSummary {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.max_abs_residual.is_some_and(|r| r <= self.tolerance)
    }
}

/// Largest distance between `other`'s points and the classical points of the
/// same members.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSummary {
    pub reference: Method,
    pub other: Method,
    pub max_distance: Option<f64>,
    pub tolerance: f64,
}

impl PairSummary {
    pub fn pass(&self) -> bool {
        self.max_distance.is_some_and(|d| d <= self.tolerance)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub methods: Vec<MethodSummary>,
    pub pairs: Vec<PairSummary>,
    pub pass: bool,
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
        for m in &self.methods {
            match (&m.error, m.max_abs_residual) {
                (Some(e), _) => writeln!(f, "{:<11} error: {e}  FAIL", m.method.as_str())?,
                (None, r) => writeln!(
                    f,
                    "{:<11} points {:>5}  max |x²/2+y²−1| = {:.3e}  (tol {:.0e})  {}",
                    m.method.as_str(),
                    m.points,
                    r.unwrap_or(f64::NAN),
                    m.tolerance,
                    verdict(m.pass())
                )?,
            }
        }
        for p in &self.pairs {
            writeln!(
                f,
                "{} vs {:<11} max distance = {:.3e}  (tol {:.0e})  {}",
                p.reference,
                p.other.as_str(),
                p.max_distance.unwrap_or(f64::NAN),
                p.tolerance,
                verdict(p.pass())
            )?;
        }
        write!(f, "overall: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

pub fn compare_methods(theta_grid_n: usize, alpha_grid_n: usize) -> Result<CompareReport> {
    compare_methods_with(
        theta_grid_n,
        alpha_grid_n,
        &CompareTolerances::default(),
        Strategy::default(),
    )
}

/// Distance from each point to the classical point of its member on the
/// same side of the x-axis.
fn distance_to_classical(points: &[BoundaryPoint], fc: &ImplicitFamily, strategy: Strategy) -> Option<f64> {
    let cfg = ClassicalSolverConfig::default();
    let per_point = map_slice(points, strategy, |p| {
        let [up, down] = classical_point_for_alpha(fc, p.alpha, &cfg).ok()??;
        Some(p.point().distance(up.point()).min(p.point().distance(down.point())))
    });
    per_point
        .into_iter()
        .try_fold(0.0_f64, |acc, d| d.map(|d| acc.max(d)))
}

pub fn compare_methods_with(
    theta_grid_n: usize,
    alpha_grid_n: usize,
    tolerances: &CompareTolerances,
    strategy: Strategy,
) -> Result<CompareReport> {
    if theta_grid_n < 16 || alpha_grid_n < 16 {
        return Err(Error::Config(format!(
            "grids must have at least 16 points, got theta {theta_grid_n}, alpha {alpha_grid_n}"
        )));
    }
    let fc = ImplicitFamily::circles();
    let runs: Vec<(Method, Result<EnvelopeCurve>)> = vec![
        (
            Method::Classical,
            classical_envelope_with(&fc, &ClassicalSolverConfig::with_grid(alpha_grid_n), strategy),
        ),
        (Method::Radial, radial_envelope_with(theta_grid_n, strategy)),
        (
            Method::Limit,
            limit_envelope_with(alpha_grid_n, &default_delta_sequence(), strategy),
        ),
        (Method::Projection, projection_envelope_with(alpha_grid_n, strategy)),
    ];

    let mut methods = Vec::new();
    let mut pairs = Vec::new();
    for (method, run) in &runs {
        let tolerance = tolerances.for_method(*method);
        match run {
            Ok(curve) => {
                methods.push(MethodSummary {
                    method: *method,
                    points: curve.len(),
                    max_abs_residual: curve.max_abs_residual,
                    tolerance,
                    error: None,
                });
                if *method != Method::Classical {
                    pairs.push(PairSummary {
                        reference: Method::Classical,
                        other: *method,
                        max_distance: distance_to_classical(&curve.points, &fc, strategy),
                        tolerance: tolerances.pairwise,
                    });
                }
            }
            Err(e) => {
                methods.push(MethodSummary {
                    method: *method,
                    points: 0,
                    max_abs_residual: None,
                    tolerance,
                    error: Some(e.to_string()),
                });
                if *method != Method::Classical {
                    pairs.push(PairSummary {
                        reference: Method::Classical,
                        other: *method,
                        max_distance: None,
                        tolerance: tolerances.pairwise,
                    });
                }
            }
        }
    }
    let pass = methods.iter().all(MethodSummary::pass) && pairs.iter().all(PairSummary::pass);
    Ok(CompareReport {
        methods,
        pairs,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grids_pass() {
        for n in [64, 16] {
            let r = compare_methods(n, n).unwrap();
            assert!(r.pass, "n = {n}\n{r}");
            assert_eq!(r.methods.len(), 4);
            assert_eq!(r.pairs.len(), 3);
        }
    }

    #[test]
    fn unattainable_tolerance_fails() {
        let r = compare_methods_with(64, 64, &CompareTolerances::uniform(1e-18), Strategy::default()).unwrap();
        assert!(!r.pass);
        assert!(r.to_string().ends_with("overall: FAIL"));
    }

    #[test]
    fn small_grids_are_rejected() {
        assert!(matches!(compare_methods(15, 64), Err(Error::Config(_))));
        assert!(matches!(compare_methods(64, 8), Err(Error::Config(_))));
    }
}
