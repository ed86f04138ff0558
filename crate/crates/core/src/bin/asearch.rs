//! Command-line front end: `solve` runs one (possibly multi-walk) search
//! and prints a certificate; `bench` times a grid of instances and worker
//! counts and emits a report.
//!
//! Exit codes: 0 when `solve` found a solution (and for `bench`, help, and
//! version), 2 when the search budget expired unsolved, 1 for usage or
//! runtime errors.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use adaptive_search::harness::{
    default_params, host_cores, run_benchmark, variable_count, ParamOverrides, RunSpec,
};
use adaptive_search::models::{build_model, PROBLEM_NAMES};
use adaptive_search::parallel::multi_walk_solve;
use adaptive_search::report::{emit_report, ReportFormat};

#[derive(Parser)]
#[command(
    name = "asearch",
    version,
    about = "Adaptive-search solver for permutation constraint problems",
    after_help = format!("Problems: {}", PROBLEM_NAMES.join(", "))
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print the certificate
    Solve(SolveArgs),
    /// Time a grid of sizes and worker counts and emit a report
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Problem name (see `asearch --help` for the list)
    problem: String,
    /// Instance size (natural parameter: side length, element count, order)
    #[arg(long)]
    size: usize,
    /// Independent walks racing for the first solution
    #[arg(long, default_value_t = host_cores())]
    workers: usize,
    /// Seed for every random choice; walk k derives its own stream from it
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    overrides: OverrideArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// Problem name (see `asearch --help` for the list)
    problem: String,
    /// Instance sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Worker counts, comma separated, ascending; the first is the
    /// speedup baseline
    #[arg(long, value_delimiter = ',', default_value = "1")]
    workers: Vec<usize>,
    /// Samples per (size, workers) cell
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Report format: table, csv, or structured
    #[arg(long, default_value = "table")]
    format: String,
    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
    /// Per-sample wall-clock budget in seconds; expiry censors the sample
    #[arg(long, value_name = "SECS", default_value_t = 120.0)]
    timeout: f64,
    /// Base seed for the whole grid
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    overrides: OverrideArgs,
}

#[derive(Args)]
struct OverrideArgs {
    /// Iterations a frozen variable stays out of culprit selection
    #[arg(long)]
    tenure: Option<u64>,
    /// Frozen-variable count that triggers a partial reset
    #[arg(long)]
    reset_limit: Option<usize>,
    /// Iteration budget per pass before a restart
    #[arg(long = "max-iter")]
    max_iterations: Option<u64>,
    /// Total pass budget (the first pass included)
    #[arg(long)]
    max_restarts: Option<u64>,
    /// Fraction of variables disturbed by a partial reset, in (0, 1]
    #[arg(long)]
    reset_fraction: Option<f64>,
}

impl From<&OverrideArgs> for ParamOverrides {
    fn from(args: &OverrideArgs) -> Self {
        ParamOverrides {
            tenure: args.tenure,
            reset_limit: args.reset_limit,
            max_iterations: args.max_iterations,
            max_restarts: args.max_restarts,
            reset_fraction: args.reset_fraction,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let usage_ok = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if usage_ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => run_solve(&args),
        Command::Bench(args) => run_bench(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run_solve(args: &SolveArgs) -> adaptive_search::Result<ExitCode> {
    build_model(&args.problem, args.size)?; // surface bad names/sizes as usage errors
    if args.workers == 0 {
        return Err(adaptive_search::Error::InvalidParams(
            "worker count must be at least 1".into(),
        ));
    }
    let n_vars = variable_count(&args.problem, args.size);
    let params = ParamOverrides::from(&args.overrides)
        .apply(default_params(&args.problem, n_vars))
        .with_seed(args.seed);
    params.validate()?;

    let outcome = multi_walk_solve(
        || build_model(&args.problem, args.size).expect("validated above"),
        &params,
        args.workers,
        args.seed,
    )?;

    let model = build_model(&args.problem, args.size)?;
    println!("problem: {}", args.problem);
    println!("size: {}", args.size);
    println!("workers: {}", args.workers);
    println!("seed: {}", args.seed);
    println!("solved: {}", outcome.solved);
    println!("verified: {}", model.verify(&outcome.solution));
    println!("cost: {}", outcome.cost);
    println!("iterations: {}", outcome.iterations_total);
    println!("restarts: {}", outcome.restarts);
    if let Some(id) = outcome.worker_id {
        println!("winner: {id}");
    }
    println!("solution: {}", outcome.solution);
    // Keep the only nondeterministic line last so scripted comparisons can
    // simply drop it.
    println!("time: {:.3}s", outcome.elapsed.as_secs_f64());

    Ok(if outcome.solved { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn run_bench(args: &BenchArgs) -> adaptive_search::Result<ExitCode> {
    let format = ReportFormat::from_str(&args.format)?;
    let spec = RunSpec {
        problem: args.problem.clone(),
        sizes: args.sizes.clone(),
        worker_counts: args.workers.clone(),
        samples: args.samples,
        seed_base: args.seed,
        timeout_seconds: args.timeout,
        overrides: ParamOverrides::from(&args.overrides),
    };
    let report = run_benchmark(&spec)?;
    let rendered = emit_report(&report, format)?;
    match &args.out {
        Some(path) => fs::write(path, rendered.as_bytes())?,
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}
