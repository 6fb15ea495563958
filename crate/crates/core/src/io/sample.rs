use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::exec::{map_slice, Strategy};
use crate::family::{EnvelopeCurve, ImplicitFamily, Point, POINT_ON_CURVE_TOL};
use crate::numeric::linspace;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRow {
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    /// Family name for member samples (`fc`, `fe`), otherwise the method or
    /// construction that produced the point.
    pub method: String,
}

impl SampleRow {
    pub fn new(x: f64, y: f64, alpha: f64, method: impl Into<String>) -> Self {
        SampleRow {
            x,
            y,
            alpha,
            method: method.into(),
        }
    }

    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Rows of `x, y, alpha, method`, in emission order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurveSampleTable {
    pub rows: Vec<SampleRow>,
}

impl CurveSampleTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, row: SampleRow) {
        self.rows.push(row);
    }

    pub fn extend_from_curve(&mut self, curve: &EnvelopeCurve) {
        self.rows.extend(
            curve
                .points
                .iter()
                .map(|p| SampleRow::new(p.x, p.y, p.alpha, p.method.as_str())),
        );
    }

    pub fn from_curve(curve: &EnvelopeCurve) -> Self {
        let mut t = Self::new();
        t.extend_from_curve(curve);
        t
    }

    /// Checks every row lies on its generating member. Rows labelled `fc` or
    /// `fe` are checked against that family; any other label is accepted on
    /// either family.
    pub fn validate_membership(&self) -> std::result::Result<(), (usize, String)> {
        let fc = ImplicitFamily::circles();
        let fe = ImplicitFamily::ellipses();
        for (i, row) in self.rows.iter().enumerate() {
            let p = row.point();
            let ok = match row.method.as_str() {
                "fc" => fc.on_member(p, row.alpha),
                "fe" => fe.on_member(p, row.alpha),
                _ => fc.on_member(p, row.alpha) || fe.on_member(p, row.alpha),
            };
            if !ok {
                return Err((
                    i,
                    format!(
                        "({}, {}) is not on the alpha = {} member within {POINT_ON_CURVE_TOL:e}",
                        row.x, row.y, row.alpha
                    ),
                ));
            }
        }
        Ok(())
    }
}

/// Samples `points_per_member` points on each of `member_count` members
/// spread uniformly over the family's α-domain. A single member is taken at
/// the middle of the domain.
pub fn sample_family(family: &ImplicitFamily, member_count: usize, points_per_member: usize) -> Result<CurveSampleTable> {
    sample_family_with(family, member_count, points_per_member, Strategy::default())
}

pub fn sample_family_with(
    family: &ImplicitFamily,
    member_count: usize,
    points_per_member: usize,
    strategy: Strategy,
) -> Result<CurveSampleTable> {
    if member_count < 1 {
        return Err(Error::Config("member_count must be >= 1".into()));
    }
    if points_per_member < 4 {
        return Err(Error::Config(format!(
            "points_per_member must be >= 4, got {points_per_member}"
        )));
    }
    let (lo, hi) = family.alpha_range();
    let alphas = linspace(lo, hi, member_count);
    let members = map_slice(&alphas, strategy, |&alpha| {
        (0..points_per_member)
            .map(|j| {
                let phi = TAU * j as f64 / points_per_member as f64;
                family
                    .member_point(alpha, phi)
                    .map(|p| SampleRow::new(p.x, p.y, alpha, family.name()))
                    .ok_or(Error::NonConvergence {
                        alpha,
                        iterations: 0,
                    })
            })
            .collect::<Result<Vec<_>>>()
    });
    let mut table = CurveSampleTable::new();
    for rows in members {
        table.rows.extend(rows?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fc_thirty_one_members() {
        let t = sample_family(&ImplicitFamily::circles(), 31, 128).unwrap();
        assert_eq!(t.len(), 31 * 128);
        assert!(t.validate_membership().is_ok());
    }

    #[test]
    fn single_member_is_unit_circle() {
        let t = sample_family(&ImplicitFamily::circles(), 1, 4).unwrap();
        assert_eq!(t.len(), 4);
        for r in &t.rows {
            assert_eq!(r.alpha, 0.0);
            assert!((r.x.hypot(r.y) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fe_rows_satisfy_member_equation() {
        let t = sample_family(&ImplicitFamily::ellipses(), 31, 128).unwrap();
        assert_eq!(t.len(), 31 * 128);
        for r in &t.rows {
            let a = r.alpha;
            let res = 2.0 * (r.x - a).powi(2) + r.y * r.y - (1.0 - 2.0 * a * a);
            assert!(res.abs() <= 1e-9);
        }
    }

    #[test]
    fn sampling_is_strategy_independent() {
        let fc = ImplicitFamily::circles();
        let a = sample_family_with(&fc, 9, 16, Strategy::Sequential).unwrap();
        let b = sample_family_with(&fc, 9, 16, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn membership_rejects_stray_rows() {
        let mut t = CurveSampleTable::new();
        t.push(SampleRow::new(0.0, 1.0, 0.0, "classical"));
        assert!(t.validate_membership().is_ok());
        t.push(SampleRow::new(0.0, 1.1, 0.0, "fc"));
        assert_eq!(t.validate_membership().unwrap_err().0, 1);
    }

    #[test]
    fn bad_counts() {
        let fc = ImplicitFamily::circles();
        assert!(sample_family(&fc, 0, 16).is_err());
        assert!(sample_family(&fc, 3, 3).is_err());
    }
}
