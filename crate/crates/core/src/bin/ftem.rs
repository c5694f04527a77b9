use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ftem::harness::{
    exit_code, run_build, run_sweep, run_verify, sweep_csv, Algorithm, Budget, BuildRequest, GeneratorSpec, SweepSpec,
    VerifyMode, EXIT_PASS, EXIT_VIOLATION,
};
use ftem::{CheckMode, Error};

#[derive(Parser)]
#[command(name = "ftem", version, about = "Fault-tolerant emulators and spanners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one emulator and print it with a summary line.
    Build(BuildArgs),
    /// Run a parameter grid and write a CSV size table.
    Sweep(SweepArgs),
    /// Check a stored emulator against its graph over all small fault sets.
    Verify(VerifyArgs),
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Approx,
}

impl From<Mode> for CheckMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => CheckMode::Exhaustive,
            Mode::Approx => CheckMode::Approx,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Graph source, e.g. gnp:n=12:p=0.5, pg2:3, blowup:f=8:k=2, file:g.txt
    #[arg(long = "gen")]
    generator: String,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long = "polylog-const", default_value_t = 1.0)]
    polylog_const: f64,
    #[arg(long, default_value_t = 1.0)]
    cb: f64,
    /// Verify exhaustively after building.
    #[arg(long)]
    verify: bool,
    /// Cap on enumerated fault sets and verification work; overrides FTEM_BUDGET.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    algo: String,
    #[arg(long)]
    f: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "spanner,emk")]
    algo: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    f: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    emulator: PathBuf,
    #[arg(long)]
    f: usize,
    /// mult or add
    #[arg(long, default_value = "mult")]
    mode: String,
    #[arg(long)]
    bound: f64,
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long = "gen")]
    generator: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Build(a) => {
            let spec: GeneratorSpec = a.common.generator.parse()?;
            let graph = Arc::new(spec.generate(a.seed)?);
            let req = BuildRequest {
                algorithm: a.algo.parse()?,
                f: a.f,
                k: a.k,
                seed: a.seed,
                mode: a.common.mode.into(),
                polylog_constant: a.common.polylog_const,
                c_b: a.common.cb,
                verify: a.common.verify,
                budget: Budget::resolve(a.common.budget),
            };
            let outcome = run_build(graph, &req)?;
            emit(a.common.out.as_ref(), &outcome.render())?;
            if a.common.out.is_some() {
                println!("{}", outcome.summary_line());
                if let Some(v) = outcome.verdict_line() {
                    println!("{v}");
                }
            }
            Ok(match outcome.passed() {
                Some(false) => EXIT_VIOLATION,
                _ => EXIT_PASS,
            })
        }
        Command::Sweep(a) => {
            let spec = SweepSpec {
                generator: a.common.generator,
                algorithms: a
                    .algo
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<Algorithm>, _>>()?,
                fs: a.f,
                ks: a.k,
                seeds: a.seeds,
                mode: a.common.mode.into(),
                polylog_constant: a.common.polylog_const,
                c_b: a.common.cb,
                verify: a.common.verify,
                jobs: a.jobs,
                budget: Budget::resolve(a.common.budget),
            };
            let rows = run_sweep(&spec)?;
            emit(a.common.out.as_ref(), &sweep_csv(&rows)?)?;
            Ok(if rows.iter().any(|r| r.verified == "fail") {
                EXIT_VIOLATION
            } else {
                EXIT_PASS
            })
        }
        Command::Verify(a) => {
            let mode: VerifyMode = a.mode.parse()?;
            let graph = fs::read_to_string(&a.graph)?;
            let emulator = fs::read_to_string(&a.emulator)?;
            let report = run_verify(&graph, &emulator, a.f, mode, a.bound, Budget::resolve(a.budget))?;
            println!("{}", report.to_json());
            println!("{}", if report.passed { "PASS" } else { "FAIL" });
            Ok(if report.passed { EXIT_PASS } else { EXIT_VIOLATION })
        }
        Command::Generate(a) => {
            let spec: GeneratorSpec = a.generator.parse()?;
            let g = spec.generate(a.seed)?;
            emit(a.out.as_ref(), &g.to_edge_list())?;
            Ok(EXIT_PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    };
    ExitCode::from(code as u8)
}
