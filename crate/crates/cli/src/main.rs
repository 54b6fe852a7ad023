//! `als`: run the least-squares solvers, stability analysis, trace
//! experiments and random-matrix sweeps from the command line.
//!
//! Exit codes: 0 ok, 1 I/O or internal, 2 parse/usage, 3 dimension,
//! 4 rank, 5 divergence, 6 sweep finished with divergent trials.

mod commands;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::manifest::Manifest;

#[derive(Parser, Debug)]
#[command(name = "als", version, about = "Approximate least squares solvers and experiments")]
struct Cli {
    /// Flat `key = value` manifest; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate x from an observation matrix and measurement vector.
    Solve(SolveArgs),
    /// Report step-size bounds and the cycle-matrix norm for a matrix.
    Analyze(AnalyzeArgs),
    /// Write per-method error traces for a scenario or fixture.
    Trace(TraceArgs),
    /// Compare ALS against batch LS on random matrices.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub vector: Option<String>,
    /// Optional ground-truth vector; enables error norms in the metadata.
    #[arg(long)]
    pub truth: Option<String>,
    /// als, ils, sls or batch.
    #[arg(long)]
    pub method: Option<String>,
    /// Step size, or `auto` for 1/(2.05·max‖h_i‖²) (ALS) or 1/(2.05·s₁²) (ILS).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Iteration count, or `auto`.
    #[arg(long)]
    pub iterations: Option<String>,
    /// Initial inverse-information scale for SLS.
    #[arg(long)]
    pub sls_scale: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub matrix: Option<String>,
    /// Step size, or `auto` for 1/(2.05·max‖h_i‖²).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    /// Fixture matrix; without it the sinusoid scenario is generated.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long)]
    pub vector: Option<String>,
    #[arg(long)]
    pub truth: Option<String>,
    /// Comma-separated subset of als,ils,sls,batch.
    #[arg(long)]
    pub methods: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    /// Generate the scenario with zero noise.
    #[arg(long)]
    pub noise_free: bool,
    /// Record every n-th iteration.
    #[arg(long)]
    pub stride: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// 10 matrices × 10 vectors per sigma (default).
    #[arg(long, conflicts_with = "full_scale")]
    pub desk_scale: bool,
    /// 100 matrices × 100 vectors per sigma.
    #[arg(long)]
    pub full_scale: bool,
    /// Comma-separated shapes such as `100x1,100x10`.
    #[arg(long)]
    pub dims: Option<String>,
    /// Comma-separated noise levels.
    #[arg(long)]
    pub sigmas: Option<String>,
    #[arg(long)]
    pub matrices: Option<String>,
    #[arg(long)]
    pub vectors: Option<String>,
    /// ALS iteration count per trial, or `auto`.
    #[arg(long)]
    pub iterations: Option<String>,
    /// ALS step is 1/(d·max‖h_i‖²); values at or below 2 can diverge.
    #[arg(long)]
    pub step_divisor: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let manifest = match &cli.config {
        Some(path) => Manifest::load(path)?,
        None => Manifest::default(),
    };
    match cli.command {
        Command::Solve(args) => commands::solve(&args, &manifest),
        Command::Analyze(args) => commands::analyze(&args, &manifest),
        Command::Trace(args) => commands::trace(&args, &manifest),
        Command::Sweep(args) => commands::sweep(&args, &manifest),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { error::code::PARSE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
