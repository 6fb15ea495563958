//! Sampling, serialization, and cross-method reporting.

mod compare;
mod csv;
mod sample;
mod svg;

pub use compare::{compare_methods, compare_methods_with, CompareReport, CompareTolerances, MethodSummary, PairSummary};
pub use csv::{emit_csv, parse_csv, read_csv, to_csv_string, CSV_HEADER};
pub use sample::{sample_family, sample_family_with, CurveSampleTable, SampleRow};
pub use svg::{emit_svg, render_svg, PlotItem, ViewBounds, CANVAS_HEIGHT, CANVAS_WIDTH};
