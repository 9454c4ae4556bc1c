//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::{point_parse, Rational};
use crate::cover::{build_cover, cover_count, delta};
use crate::record::{write_cover_jsonl, ReportJson, WitnessJson};
use crate::svg::{render_cover, RenderOptions};
use crate::verify::{
    boundary_suite, coverage_report, lattice_samples, random_samples, CoverageReport,
    VerifyError,
};
use crate::witness::{witness, WitnessError};

#[derive(Debug, Parser)]
#[command(
    name = "simplex-cover",
    version,
    about = "Cover S^(n+δ) by (n+1)^d + (n-1)^d - n^d unit right d-simplices and verify it"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the number of simplices in the cover.
    Count {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: i64,
    },
    /// Write the cover as JSON lines.
    Cover {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: i64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate a cover element containing a point.
    Witness {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: i64,
        /// Comma separated rationals, e.g. "9/8,9/8".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Run a coverage campaign and print the report as JSON.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: i64,
        /// Target S^(n+eps); defaults to δ = 1/(n+2).
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Lattice step is δ/q.
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a planar cover as SVG.
    Render {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        out: PathBuf,
        /// Map through the shear that makes the triangles equilateral.
        #[arg(long)]
        equilateral: bool,
        /// Number and label each cover element.
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lattice,
    Random,
    Boundary,
    All,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Failure(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) | CliError::Io { .. } => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn check_dn(d: usize, n: i64) -> Result<(), CliError> {
    cover_count(d, n).map(|_| ()).map_err(usage)
}

/// Execute a parsed command, writing its normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout_err = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    match cli.command {
        Command::Count { d, n } => {
            let total = cover_count(d, n).map_err(usage)?;
            let top = (n - 1).pow(d as u32);
            let base = total - top as u128;
            writeln!(out, "{total}").map_err(stdout_err)?;
            writeln!(out, "top {top}").map_err(stdout_err)?;
            writeln!(out, "base {base}").map_err(stdout_err)?;
        }
        Command::Cover { d, n, out: path } => {
            check_dn(d, n)?;
            let cover = build_cover(d, n).map_err(usage)?;
            match path {
                Some(path) => {
                    let f = File::create(&path).map_err(io_err(&path))?;
                    write_cover_jsonl(&cover, BufWriter::new(f)).map_err(io_err(&path))?;
                }
                None => write_cover_jsonl(&cover, &mut *out).map_err(stdout_err)?,
            }
        }
        Command::Witness { d, n, point } => {
            check_dn(d, n)?;
            let x = point_parse(&point, d).map_err(usage)?;
            let cover = build_cover(d, n).map_err(usage)?;
            let result = witness(&x, &cover).map_err(|e| match e {
                WitnessError::NoCover(_) => {
                    CliError::Failure(format!("theorem violation: {e}"))
                }
                other => CliError::Failure(other.to_string()),
            })?;
            let json = serde_json::to_string(&WitnessJson::from(&result))
                .expect("witness serializes");
            writeln!(out, "{json}").map_err(stdout_err)?;
        }
        Command::Verify {
            d,
            n,
            eps,
            mode,
            q,
            samples,
            seed,
        } => {
            check_dn(d, n)?;
            let eps: Rational = match eps {
                Some(s) => s.parse().map_err(usage)?,
                None => delta(n).map_err(usage)?,
            };
            let report = run_campaign(d, n, &eps, mode, q, samples, seed)?;
            let json = serde_json::to_string(&ReportJson::from(&report))
                .expect("report serializes");
            writeln!(out, "{json}").map_err(stdout_err)?;
            if !report.is_success() {
                return Err(CliError::Failure(format!(
                    "{} of {} samples uncovered, {} fallbacks",
                    report.total - report.covered,
                    report.total,
                    report.routes.fallback
                )));
            }
        }
        Command::Render {
            n,
            out: path,
            equilateral,
            labels,
        } => {
            check_dn(2, n)?;
            let cover = build_cover(2, n).map_err(usage)?;
            let svg = render_cover(&cover, RenderOptions { equilateral, labels });
            std::fs::write(&path, svg).map_err(io_err(&path))?;
        }
    }
    Ok(())
}

/// Build the cover and run the requested sample families, merging reports in
/// the order lattice, random, boundary.
pub fn run_campaign(
    d: usize,
    n: i64,
    eps: &Rational,
    mode: Mode,
    q: u32,
    samples: usize,
    seed: u64,
) -> Result<CoverageReport, CliError> {
    let plan_err = |e: VerifyError| match e {
        VerifyError::OutOfDomain(_) => CliError::Failure(e.to_string()),
        other => usage(other),
    };
    let cover = build_cover(d, n).map_err(usage)?;
    let mut points = Vec::new();
    if matches!(mode, Mode::Lattice | Mode::All) {
        points.extend(lattice_samples(d, n, eps, q).map_err(plan_err)?);
    }
    if matches!(mode, Mode::Random | Mode::All) {
        points.extend(random_samples(d, n, eps, samples, seed).map_err(plan_err)?);
    }
    if matches!(mode, Mode::Boundary | Mode::All) {
        points.extend(boundary_suite(d, n, eps).map_err(plan_err)?);
    }
    coverage_report(&cover, &points, eps).map_err(plan_err)
}
