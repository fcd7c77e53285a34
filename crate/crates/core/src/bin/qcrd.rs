use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcrd::commands::{self, configure_threads, parse_grid, DEFAULT_CURVE_SAMPLES, THREADS_ENV};
use qcrd::problem::{Problem, ProblemSpec, PAPER_EXAMPLE};

#[derive(Parser)]
#[command(name = "qcrd", version, about = "Quantum-to-classical rate-distortion curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProblemArgs {
    /// Named problem (paper-example, luo-devetak).
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// JSON problem file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Number of POVM outcomes; must match the observable.
    #[arg(long)]
    outcomes: Option<usize>,
    /// Worker threads.
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate random POVMs and write (distortion, rate) rows.
    Sample {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Sampling envelope and descent curve, with an SVG figure.
    Curve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// `start:stop:step` or a comma-separated list.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CURVE_SAMPLES)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Conditional-rate curve with quantum side information.
    QsiCurve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
    /// Run a self-check suite (lemmas, example, oracle, qsi).
    Check {
        #[arg(value_name = "SUITE", required_unless_present = "suite_flag")]
        suite: Option<String>,
        #[arg(long = "suite", id = "suite_flag")]
        suite_flag: Option<String>,
        #[arg(long, env = THREADS_ENV)]
        threads: Option<usize>,
    },
}

fn load(args: &ProblemArgs) -> qcrd::Result<Problem> {
    let mut spec = match (&args.spec, &args.preset) {
        (Some(path), _) => ProblemSpec::from_path(path)?,
        (None, Some(name)) => ProblemSpec::preset(name)?,
        (None, None) => ProblemSpec::preset(PAPER_EXAMPLE)?,
    };
    if args.outcomes.is_some() {
        spec.outcomes = args.outcomes;
    }
    spec.resolve()
}

fn emit(text: &str, path: Option<&Path>) -> qcrd::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> qcrd::Result<()> {
    match cli.command {
        Command::Sample { problem, n, seed, out_csv } => {
            configure_threads(problem.threads)?;
            let p = load(&problem)?;
            let csv = commands::cmd_sample(&p, n, seed)?;
            emit(&csv, out_csv.as_deref().or(p.output.csv.as_deref()))
        }
        Command::Curve { problem, grid, n, seed, out_csv, out_svg } => {
            configure_threads(problem.threads)?;
            let mut p = load(&problem)?;
            p.solver.rng_seed = seed;
            let grid = match grid {
                Some(g) => parse_grid(&g)?,
                None => p.default_grid(),
            };
            let out = commands::cmd_curve(&p, &grid, n, seed)?;
            emit(&out.csv, out_csv.as_deref().or(p.output.csv.as_deref()))?;
            if let Some(svg) = out_svg.as_deref().or(p.output.svg.as_deref()) {
                std::fs::write(svg, &out.svg)?;
            }
            Ok(())
        }
        Command::QsiCurve { problem, grid, seed, out_csv } => {
            configure_threads(problem.threads)?;
            let mut p = load(&problem)?;
            if let Some(seed) = seed {
                p.solver.rng_seed = seed;
            }
            let grid = match grid {
                Some(g) => parse_grid(&g)?,
                None => p.default_grid(),
            };
            let (_, csv) = commands::cmd_qsi_curve(&p, &grid)?;
            emit(&csv, out_csv.as_deref().or(p.output.csv.as_deref()))
        }
        Command::Check { suite, suite_flag, threads } => {
            configure_threads(threads)?;
            let name = suite_flag.or(suite).expect("clap enforces a suite");
            let report = commands::cmd_check(&name)?;
            println!("{}", report.to_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcrd: {e}");
            ExitCode::FAILURE
        }
    }
}
