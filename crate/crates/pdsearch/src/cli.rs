//! Command-line interface.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use pdsearch_core::analytic::RatioGrid;
use pdsearch_core::circuit::{build_partial_diffusion_circuit, verify_partial_diffusion};
use pdsearch_core::unknown_m::DEFAULT_LAMBDA;
use pdsearch_core::SearchShape;

use crate::error::{CliError, Result};
use crate::gates::GateListRecord;
use crate::marked::{random_marked, MarkedSpec};
use crate::montecarlo::{run_batch, summarize, write_runs_csv};
use crate::report::{analytic, auto_iterations, simulate};
use crate::sweep::{sweep, write_csv, SweepMode};

/// Environment variable that fixes the worker thread count.
pub const THREADS_ENV: &str = "PDSEARCH_THREADS";

/// Largest deviation accepted by `circuit-check`.
pub const CIRCUIT_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "pdsearch",
    version,
    about = "Partial-diffusion quantum search simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a fixed number of iterations and report the result as JSON.
    Simulate(SimulateArgs),
    /// Tabulate success probabilities over a grid of M/N.
    Sweep(SweepArgs),
    /// Monte Carlo runs of the search with an unknown number of matches.
    UnknownM(UnknownMArgs),
    /// Check the gate decomposition of the partial diffusion operator.
    CircuitCheck(CircuitArgs),
    /// Closed-form iteration count and success probability.
    Analytic(AnalyticArgs),
}

/// `auto` or a fixed iteration count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iterations {
    Auto,
    Fixed(u64),
}

impl FromStr for Iterations {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Iterations::Auto);
        }
        s.parse()
            .map(Iterations::Fixed)
            .map_err(|_| format!("expected `auto` or an iteration count, got {s:?}"))
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Number of index qubits.
    #[arg(long)]
    pub n: usize,
    /// `all`, `random:K`, or a comma-separated index list.
    #[arg(long, default_value = "")]
    pub marked: String,
    #[arg(long, default_value = "auto")]
    pub q: Iterations,
    /// Seed for `random:K` placement.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1e-4)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub stop: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = SweepMode::Proposed)]
    pub mode: SweepMode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UnknownMArgs {
    /// Number of index qubits.
    #[arg(long)]
    pub n: usize,
    /// Number of marked items, placed at seeded random positions.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub runs: u64,
    /// Run `k` uses seed `seed + k`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    /// Per-run CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON; printed to stdout when omitted.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Points on each expected-cost curve in the summary.
    #[arg(long, default_value_t = 100)]
    pub curve_points: usize,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Number of index qubits.
    #[arg(long)]
    pub n: usize,
    /// Write the gate list as JSON.
    #[arg(long)]
    pub emit_gates: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long = "N", requires = "marked", conflicts_with = "ratio")]
    pub items: Option<u64>,
    #[arg(long = "M", requires = "items")]
    pub marked: Option<u64>,
    #[arg(long, required_unless_present = "items")]
    pub ratio: Option<f64>,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Writes to `path`, or to `stdout` when no path is given.
fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut file = create(p)?;
            body(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => body(stdout),
    }
}

fn write_json(value: &impl serde::Serialize, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => {
            let spec: MarkedSpec = args.marked.parse()?;
            let marked = spec.resolve(args.n, args.seed)?;
            let q = match args.q {
                Iterations::Auto => auto_iterations(&marked)?,
                Iterations::Fixed(q) => q,
            };
            let report = simulate(args.n, &marked, q)?;
            with_output(args.out.as_deref(), stdout, |w| write_json(&report, w))
        }
        Command::Sweep(args) => {
            let grid = RatioGrid::new(args.start, args.stop, args.step)?;
            let rows = sweep(&grid, args.mode)?;
            with_output(args.out.as_deref(), stdout, |mut w| {
                write_csv(&rows, &mut w)
            })
        }
        Command::UnknownM(args) => {
            if args.runs == 0 {
                return Err(CliError::Usage("--runs must be at least 1".into()));
            }
            let marked = random_marked(args.n, args.m, args.seed)?;
            let records = run_batch(args.n, &marked, args.runs, args.seed, args.lambda)?;
            if let Some(path) = &args.out {
                let mut file = create(path)?;
                write_runs_csv(&records, &mut file)?;
                file.flush()?;
            }
            let summary = summarize(
                args.n,
                &marked,
                &records,
                args.seed,
                args.lambda,
                args.curve_points,
            )?;
            with_output(args.summary.as_deref(), stdout, |w| write_json(&summary, w))
        }
        Command::CircuitCheck(args) => {
            if let Some(path) = &args.emit_gates {
                let list = build_partial_diffusion_circuit(args.n)?;
                let mut file = create(path)?;
                write_json(&GateListRecord::from(&list), &mut file)?;
                file.flush()?;
            }
            let deviation = verify_partial_diffusion(args.n)?;
            let pass = deviation <= CIRCUIT_TOL;
            writeln!(
                stdout,
                "n={} max_deviation={:e} {}",
                args.n,
                deviation,
                if pass { "PASS" } else { "FAIL" }
            )?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Internal(format!(
                    "circuit deviates from the operator by {deviation}"
                )))
            }
        }
        Command::Analytic(args) => {
            let shape = match (args.items, args.marked, args.ratio) {
                (Some(items), Some(m), None) => SearchShape::new(items, m)?,
                (None, None, Some(r)) => SearchShape::from_ratio(r)?,
                _ => {
                    return Err(CliError::Usage(
                        "give either --N and --M, or --ratio".into(),
                    ))
                }
            };
            write_json(&analytic(&shape), stdout)
        }
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`] when it is set.
pub fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Usage(format!("{THREADS_ENV}={value:?} is not a positive integer"))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let outcome = init_threads().and_then(|()| run(cli, &mut lock));
    let _ = lock.flush();
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("pdsearch: {err}");
            err.exit_code()
        }
    }
}
