use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use envelope_core::classical::{classical_envelope, ClassicalSolverConfig};
use envelope_core::io::{
    compare_methods_with, emit_csv, emit_svg, sample_family, to_csv_string, CompareTolerances, CurveSampleTable,
    PlotItem, SampleRow, ViewBounds,
};
use envelope_core::limit::limit_envelope;
use envelope_core::numeric::linspace;
use envelope_core::projection::{
    contributing_latitudes, fe_envelope, fe_member_from_latitude, project_latitude_circle, projection_envelope,
    verify_stretch_congruence, FE_TILT,
};
use envelope_core::radial::radial_envelope;
use envelope_core::{analytic_ellipse, null_isocline_points, EnvelopeCurve, Error, ImplicitFamily, Point, Strategy};

#[derive(Parser, Debug)]
#[command(name = "envelope", version, about = "Envelopes and isoclines of one-parameter curve families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the members of a family (and overlay its envelope in SVG).
    RenderFamily {
        #[arg(long, value_enum, default_value_t = FamilyArg::Fc)]
        family: FamilyArg,
        /// Number of members.
        #[arg(long, default_value_t = 31)]
        n: usize,
        /// Sample points per member.
        #[arg(long, default_value_t = 128)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute an envelope with one method.
    Envelope {
        #[arg(long, value_enum, default_value_t = FamilyArg::Fc)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Classical)]
        method: MethodArg,
        /// Grid size (α samples, or ray directions for `radial`).
        #[arg(long, default_value_t = 201)]
        n: usize,
        /// Fail with exit code 1 when the envelope residual exceeds this.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Zero-slope points of every member.
    Isocline {
        #[arg(long, value_enum, default_value_t = FamilyArg::Fc)]
        family: FamilyArg,
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run all methods on the circle family and check they agree.
    Compare {
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Override every tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Shadows of a tilted sphere's latitude circles.
    Project {
        /// Number of latitudes.
        #[arg(long, default_value_t = 21)]
        n: usize,
        #[arg(long, default_value_t = 128)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; CSV goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "svg")]
    csv: bool,
    #[arg(long)]
    svg: bool,
}

impl OutputArgs {
    fn wants_svg(&self) -> bool {
        if self.svg {
            return true;
        }
        !self.csv
            && self
                .out
                .as_deref()
                .and_then(Path::extension)
                .is_some_and(|e| e.eq_ignore_ascii_case("svg"))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Fc,
    Fe,
}

impl FamilyArg {
    fn family(self) -> ImplicitFamily {
        match self {
            FamilyArg::Fc => ImplicitFamily::circles(),
            FamilyArg::Fe => ImplicitFamily::ellipses(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Classical,
    Radial,
    Limit,
    Projection,
}

enum Failure {
    Tolerance(String),
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn write_output(
    output: &OutputArgs,
    table: &CurveSampleTable,
    overlay: &[PlotItem<'_>],
) -> Result<(), Failure> {
    if output.wants_svg() {
        let Some(path) = &output.out else {
            return Err(Failure::Usage("--svg needs --out <path>".into()));
        };
        let mut items = vec![PlotItem::Samples(table)];
        items.extend_from_slice(overlay);
        emit_svg(&items, path, ViewBounds::default())?;
    } else {
        match &output.out {
            Some(path) => emit_csv(table, path)?,
            None => print!("{}", to_csv_string(table)),
        }
    }
    Ok(())
}

fn unit_circle(samples: usize) -> Vec<Point> {
    (0..samples)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / samples as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::RenderFamily {
            family,
            n,
            points,
            output,
        } => {
            let fam = family.family();
            let table = sample_family(&fam, n, points)?;
            match family {
                FamilyArg::Fc => {
                    let ellipse = analytic_ellipse(512);
                    write_output(&output, &table, &[PlotItem::Envelope(&ellipse)])
                }
                FamilyArg::Fe => {
                    let circle = unit_circle(512);
                    write_output(&output, &table, &[PlotItem::Outline(&circle)])
                }
            }
        }
        Command::Envelope {
            family,
            method,
            n,
            tol,
            output,
        } => {
            let curve: EnvelopeCurve = match (family, method) {
                (_, MethodArg::Classical) => {
                    classical_envelope(&family.family(), &ClassicalSolverConfig::with_grid(n))?
                }
                (FamilyArg::Fc, MethodArg::Radial) => radial_envelope(n)?,
                (FamilyArg::Fc, MethodArg::Limit) => limit_envelope(n)?,
                (FamilyArg::Fc, MethodArg::Projection) => projection_envelope(n)?,
                (FamilyArg::Fe, MethodArg::Projection) => fe_envelope(
                    &contributing_latitudes(n),
                    &ClassicalSolverConfig::default(),
                    Strategy::default(),
                )?,
                (FamilyArg::Fe, m) => {
                    return Err(Failure::Usage(format!(
                        "method {m:?} is only defined for the circle family (fc)"
                    )))
                }
            };
            let residual = curve.max_abs_residual.unwrap_or(f64::NAN);
            eprintln!(
                "{} envelope: {} points, max envelope residual {residual:.3e}",
                curve.method,
                curve.len()
            );
            let table = CurveSampleTable::from_curve(&curve);
            let members = sample_family(&family.family(), 31, 128)?;
            if output.wants_svg() {
                let Some(path) = &output.out else {
                    return Err(Failure::Usage("--svg needs --out <path>".into()));
                };
                emit_svg(
                    &[PlotItem::Samples(&members), PlotItem::Envelope(&curve)],
                    path,
                    ViewBounds::default(),
                )?;
            } else {
                write_output(&output, &table, &[])?;
            }
            match tol {
                Some(t) if !(residual <= t) => Err(Failure::Tolerance(format!(
                    "envelope residual {residual:.3e} exceeds --tol {t:e}"
                ))),
                _ => Ok(()),
            }
        }
        Command::Isocline { family, n, output } => {
            let fam = family.family();
            let (lo, hi) = fam.alpha_range();
            let mut table = CurveSampleTable::new();
            let mut outline = Vec::new();
            for alpha in linspace(lo, hi, n) {
                for p in null_isocline_points(&fam, alpha)? {
                    table.push(SampleRow::new(p.x, p.y, alpha, "isocline"));
                    outline.push(p);
                }
            }
            outline.sort_by(|a, b| a.polar_angle().total_cmp(&b.polar_angle()));
            let members = sample_family(&fam, 31, 128)?;
            if output.wants_svg() {
                let Some(path) = &output.out else {
                    return Err(Failure::Usage("--svg needs --out <path>".into()));
                };
                emit_svg(
                    &[PlotItem::Samples(&members), PlotItem::Outline(&outline)],
                    path,
                    ViewBounds::default(),
                )?;
                Ok(())
            } else {
                write_output(&output, &table, &[])
            }
        }
        Command::Compare { n, tol } => {
            let tolerances = tol.map_or_else(CompareTolerances::default, CompareTolerances::uniform);
            let report = compare_methods_with(n, n, &tolerances, Strategy::default())?;
            println!("{report}");
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Tolerance("methods disagree beyond tolerance".into()))
            }
        }
        Command::Project { n, points, output } => {
            let latitudes = linspace(-FRAC_PI_2, FRAC_PI_2, n);
            let mut table = CurveSampleTable::new();
            for &lat in &latitudes {
                let shadow = project_latitude_circle(lat, FE_TILT)?;
                let alpha = fe_member_from_latitude(lat)?.alpha;
                for k in 0..points {
                    let p = shadow.point_at(std::f64::consts::TAU * k as f64 / points as f64);
                    table.push(SampleRow::new(p.x, p.y, alpha, "fe"));
                }
            }
            let congruence = verify_stretch_congruence(&latitudes, points.max(8))?;
            eprintln!("stretch congruence residual {congruence:.3e}");
            let envelope = fe_envelope(
                &contributing_latitudes(101),
                &ClassicalSolverConfig::default(),
                Strategy::default(),
            )?;
            write_output(&output, &table, &[PlotItem::Envelope(&envelope)])
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Tolerance(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io { .. } => 3,
                Error::NonConvergence { .. } | Error::LimitFit { .. } => 1,
                _ => 2,
            })
        }
    }
}
