//! `brushlab <subcommand> --config <path> [--out <dir>] [--threads N]`
//!
//! Exit codes: 0 success, 1 i/o failure, 2 config error, 3 precondition
//! error, 4 accuracy flag (a quadrature check or a recorded target failed).

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod random;
mod reference;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "brushlab", version, about = "Experiments over anisotropic brushlet bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix, bell algebra, quasi-norm and admissible-pair checks.
    BasisCheck(Common),
    /// Telescoping residual and Parseval ratio.
    CompleteCheck(Common),
    /// Sequence norms, engine cross-check or the inequality suite.
    Norm(Common),
    /// Greedy error curves and oracle coherence.
    ApproxDecay(Common),
    /// Norm growth of axis families.
    Democracy(Common),
    /// Bernstein exponent on extremal families.
    Bernstein(Common),
    /// Jackson witness or Jackson bound.
    Jackson(Common),
    /// Embedding ratios between mixed and unmixed spaces.
    Embed(Common),
}

#[derive(Args)]
struct Common {
    /// Flat TOML config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `out_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (overrides BRUSHLAB_THREADS and `threads`).
    #[arg(long)]
    threads: Option<usize>,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common) {
        match self {
            Command::BasisCheck(c) => ("basis-check", c),
            Command::CompleteCheck(c) => ("complete-check", c),
            Command::Norm(c) => ("norm", c),
            Command::ApproxDecay(c) => ("approx-decay", c),
            Command::Democracy(c) => ("democracy", c),
            Command::Bernstein(c) => ("bernstein", c),
            Command::Jackson(c) => ("jackson", c),
            Command::Embed(c) => ("embed", c),
        }
    }
}

fn threads(flag: Option<usize>, configured: Option<usize>) -> CliResult<usize> {
    let env = match std::env::var("BRUSHLAB_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("BRUSHLAB_THREADS={v:?} is not a thread count")))?,
        ),
        Err(_) => None,
    };
    let n = flag
        .or(env)
        .or(configured)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if n == 0 {
        return Err(CliError::Config("thread count must be positive".into()));
    }
    Ok(n)
}

fn run(cli: &Cli) -> CliResult<()> {
    let (experiment, args) = cli.command.parts();
    let loaded = config::load(&args.config, experiment)?;
    let n_threads = threads(args.threads, loaded.config.threads)?;
    let out = args
        .out
        .clone()
        .or_else(|| loaded.config.out_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n_threads)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let start = Instant::now();
    let report = pool.install(|| commands::run(experiment, &loaded))?;
    report::write(&out, experiment, config::echo(&loaded.table), n_threads, &report)?;
    for t in &report.targets {
        eprintln!("{} {}: {} (target {})", if t.pass { "ok  " } else { "FAIL" }, t.name, report::num(t.value), t.target);
    }
    eprintln!("{experiment}: wrote {} in {:.1}s", out.display(), start.elapsed().as_secs_f64());
    if !report.all_pass() {
        return Err(CliError::Accuracy("one or more targets were missed".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("brushlab: {e}");
            e.exit_code()
        }
    }
}
