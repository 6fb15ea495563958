//! Deterministic SVG line art on a fixed 600×400 canvas.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::sample::CurveSampleTable;
use crate::error::{Error, Result};
use crate::family::{EnvelopeCurve, Point};

pub const CANVAS_WIDTH: u32 = 600;
pub const CANVAS_HEIGHT: u32 = 400;

const FAMILY_STROKE: f64 = 0.5;
const ENVELOPE_STROKE: f64 = 1.5;
const FAMILY_COLOR: &str = "#3b6ea5";
const ENVELOPE_COLOR: &str = "#c0392b";

/// Plot window in data coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViewBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Default for ViewBounds {
    fn default() -> Self {
        ViewBounds {
            x_min: -1.6,
            x_max: 1.6,
            y_min: -1.1,
            y_max: 1.1,
        }
    }
}

impl ViewBounds {
    fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if finite && self.x_min < self.x_max && self.y_min < self.y_max {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid view bounds {self:?}")))
        }
    }
}

#[derive(Clone, Copy)]
pub enum PlotItem<'a> {
    /// A computed envelope, drawn as one closed polyline.
    Envelope(&'a EnvelopeCurve),
    /// Family samples, one closed polyline per consecutive run of rows with
    /// the same `alpha` and label.
    Samples(&'a CurveSampleTable),
    /// Any other closed outline, drawn with the envelope stroke.
    Outline(&'a [Point]),
}

fn polyline(out: &mut String, class: &str, color: &str, width: f64, pts: &[Point]) {
    if pts.is_empty() {
        return;
    }
    let _ = write!(
        out,
        r#"<polyline class="{class}" stroke="{color}" stroke-width="{width}" vector-effect="non-scaling-stroke" points=""#
    );
    for (i, p) in pts.iter().chain(pts.first()).enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.6},{:.6}", p.x, p.y);
    }
    out.push_str("\"/>\n");
}

pub fn render_svg(items: &[PlotItem<'_>], view: ViewBounds) -> Result<String> {
    if items.is_empty() {
        return Err(Error::Empty("nothing to plot"));
    }
    view.validate()?;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    // y is flipped by the group transform, so the view box spans −y_max..−y_min
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_WIDTH}" height="{CANVAS_HEIGHT}" viewBox="{:.6} {:.6} {:.6} {:.6}" preserveAspectRatio="xMidYMid meet">"#,
        view.x_min,
        -view.y_max,
        view.x_max - view.x_min,
        view.y_max - view.y_min
    );
    out.push_str("<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linejoin=\"round\">\n");
    for item in items {
        match item {
            PlotItem::Samples(table) => {
                let rows = &table.rows;
                let mut start = 0;
                while start < rows.len() {
                    let mut end = start + 1;
                    while end < rows.len()
                        && rows[end].alpha == rows[start].alpha
                        && rows[end].method == rows[start].method
                    {
                        end += 1;
                    }
                    let pts: Vec<Point> = rows[start..end].iter().map(|r| r.point()).collect();
                    polyline(&mut out, "family", FAMILY_COLOR, FAMILY_STROKE, &pts);
                    start = end;
                }
            }
            PlotItem::Envelope(curve) => {
                polyline(&mut out, "envelope", ENVELOPE_COLOR, ENVELOPE_STROKE, &curve.xy());
            }
            PlotItem::Outline(pts) => {
                polyline(&mut out, "envelope", ENVELOPE_COLOR, ENVELOPE_STROKE, pts);
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn emit_svg(items: &[PlotItem<'_>], path: impl AsRef<Path>, view: ViewBounds) -> Result<()> {
    let path = path.as_ref();
    let svg = render_svg(items, view)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}
