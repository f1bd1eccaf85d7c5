//! Argument parsing and the three subcommands.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use lcpset::rational::{parse_rational, Rational, VecDisplay};

use crate::analysis::{analyze, check_point, classify, AnalysisError};
use crate::problem::{load_problem, parse_point, parse_slice_arg, Problem, ProblemError};
use crate::report::{values, CertificateEntry, PointCheck};
use crate::svg::{render_svg, SvgError, View};

#[derive(Debug, Parser)]
#[command(name = "lcpset", version, about = "Solution sets of interval linear complementarity problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble the solution set and write the JSON report and, for a 2D view, an SVG figure.
    Analyze {
        file: PathBuf,
        /// Fix a coordinate for the figure, e.g. `z2=0`; repeat for n = 4.
        #[arg(long = "slice", value_name = "COORD=VALUE")]
        slice: Vec<String>,
        /// SVG output; defaults to the JSON path with an .svg extension when a 2D view exists.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "report.json")]
        json: PathBuf,
        /// Step of the symmetric membership grid, e.g. `1/8`.
        #[arg(long, value_name = "P/Q")]
        grid_step: Option<String>,
        /// Tracing cells per axis for quadric curves.
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Decide membership of one point in both solution sets.
    Check {
        file: PathBuf,
        #[arg(long, value_name = "A/B,C/D,...")]
        point: String,
    },
    /// Matrix class certificates of the interval matrix and its corners.
    Classify { file: PathBuf },
}

/// Bad flag values, reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<ProblemError>() {
            return e.exit_code();
        }
        if let Some(e) = cause.downcast_ref::<AnalysisError>() {
            return e.exit_code();
        }
        if cause.is::<UsageError>() || cause.is::<SvgError>() {
            return 2;
        }
    }
    4
}

/// Parses `args`, runs the command and returns the process exit code.
/// Panics inside the pipeline are reported as internal errors (exit 4).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match catch_unwind(AssertUnwindSafe(|| execute(cli, out))) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            let _ = writeln!(err, "error: internal invariant violated: {msg}");
            4
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Analyze {
            file,
            slice,
            svg,
            json,
            grid_step,
            resolution,
        } => {
            let mut problem = load_problem(&file)?;
            apply_flags(&mut problem, &slice, grid_step.as_deref(), resolution)?;
            run_analyze(&problem, &json, svg.as_deref(), out)
        }
        Command::Check { file, point } => {
            let problem = load_problem(&file)?;
            let z = parse_point(&point).map_err(UsageError)?;
            let check = check_point(&problem, &z)?;
            write_check(out, &z, &check)?;
            Ok(())
        }
        Command::Classify { file } => {
            let problem = load_problem(&file)?;
            let classes = classify(&problem)?;
            let line = |out: &mut dyn Write, name: &str, e: &CertificateEntry| {
                writeln!(out, "{name:<22} {}  {}", if e.holds { "yes" } else { "no " }, e.detail)
            };
            writeln!(out, "{}", problem.name)?;
            line(out, "interval M-matrix", &classes.interval.m)?;
            line(out, "interval H+-matrix", &classes.interval.hplus)?;
            line(out, "interval P-matrix", &classes.interval.p)?;
            for (name, c) in [("lower corner", &classes.lower), ("upper corner", &classes.upper)] {
                writeln!(out, "{name:<22} Z-matrix: {}", if c.z { "yes" } else { "no" })?;
                line(out, "  M-matrix", &c.m)?;
                line(out, "  H+-matrix", &c.hplus)?;
                line(out, "  P-matrix", &c.p)?;
            }
            Ok(())
        }
    }
}

pub fn apply_flags(problem: &mut Problem, slice: &[String], grid_step: Option<&str>, resolution: Option<usize>) -> Result<()> {
    let n = problem.dim();
    if !slice.is_empty() {
        problem.slice = slice
            .iter()
            .map(|s| parse_slice_arg(s, n))
            .collect::<std::result::Result<_, _>>()
            .map_err(UsageError)?;
    }
    if let Some(step) = grid_step {
        let v: Rational = parse_rational(step).map_err(|e| UsageError(format!("bad --grid-step {step:?}: {e}")))?;
        if v <= Rational::from_integer(0.into()) {
            return Err(UsageError("--grid-step must be positive".into()).into());
        }
        problem.grid_step = v;
    }
    if let Some(r) = resolution {
        if r < 4 {
            return Err(UsageError("--resolution must be at least 4".into()).into());
        }
        problem.resolution = r;
    }
    Ok(())
}

fn run_analyze(problem: &Problem, json: &Path, svg: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let view = match View::new(problem.dim(), &problem.slice) {
        Ok(v) => Some(v),
        Err(e) if svg.is_some() => return Err(e.into()),
        Err(_) => None,
    };
    let analysis = analyze(problem)?;
    let text = serde_json::to_string_pretty(&analysis.report).context("serializing report")?;
    std::fs::write(json, text + "\n").with_context(|| format!("writing {}", json.display()))?;

    let r = &analysis.report;
    writeln!(out, "{} (n = {})", r.name, r.n)?;
    for case in &r.cases {
        let status = match case.status {
            crate::report::CaseStatus::Empty => "empty".to_string(),
            crate::report::CaseStatus::Piece => {
                let verts: Vec<String> = case.vertices.iter().map(|v| VecDisplay(&values(v)).to_string()).collect();
                let mut s = format!("piece, vertices {}", verts.join(" "));
                if !case.rays.is_empty() {
                    let rays: Vec<String> = case.rays.iter().map(|v| VecDisplay(&values(v)).to_string()).collect();
                    s += &format!(", rays {}", rays.join(" "));
                }
                s
            }
        };
        writeln!(out, "  {:<24} {status}", case.pattern)?;
    }
    let bound = |b: &Option<Vec<crate::report::Num>>| b.as_ref().map_or("none".into(), |v| VecDisplay(&values(v)).to_string());
    writeln!(out, "inf {}  sup {}", bound(&r.union.inf), bound(&r.union.sup))?;
    writeln!(out, "{}", r.union.connectedness)?;
    let excluded: Vec<&PointCheck> = r.vertex_checks.iter().filter(|c| !c.in_symmetric_solution_set).collect();
    for c in excluded {
        writeln!(out, "vertex {} is not in the symmetric solution set", VecDisplay(&values(&c.point)))?;
    }
    writeln!(out, "wrote {}", json.display())?;

    if let Some(view) = view {
        let path = svg.map(Path::to_path_buf).unwrap_or_else(|| json.with_extension("svg"));
        let picture = render_svg(&analysis, &view, problem.resolution);
        std::fs::write(&path, picture).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

fn write_check(out: &mut dyn Write, z: &[Rational], c: &PointCheck) -> std::io::Result<()> {
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "z = {}", VecDisplay(z))?;
    writeln!(out, "solution set: {}", yn(c.in_solution_set))?;
    writeln!(out, "symmetric solution set: {}", yn(c.in_symmetric_solution_set))?;
    if let Some(w) = &c.witness {
        let rows: Vec<String> = w.m.iter().map(|r| VecDisplay(&values(r)).to_string()).collect();
        writeln!(out, "  witness M = [{}], q = {}", rows.join(", "), VecDisplay(&values(&w.q)))?;
    }
    for step in &c.chain {
        writeln!(out, "  {step}")?;
    }
    for range in &c.pair_ranges {
        writeln!(out, "  {range}")?;
    }
    if let Some(k) = c.certificate_rows {
        writeln!(out, "  infeasibility certificate combines {k} rows")?;
    }
    Ok(())
}
