mod commands;
mod expected;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confkit::scalar::parse_rational;
use confkit::Rational;

use report::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "confkit", version, about = "Exact checks for the W and S series of Lie conformal superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for sampled elements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Skew-symmetry, Jacobi identity, annihilation oracle and mutation detection.
    Axioms(commands::axioms::AxiomsArgs),
    /// Singular vectors of tensor modules against the expected inventory.
    Classify(commands::classify::ClassifyArgs),
    /// The conformal de Rham complex: d̃² = 0, Cartan identity, homotopy, exactness.
    Derham(commands::derham::DerhamArgs),
    /// Conformal duals, double duals and transposes.
    Dual(commands::dual::DualArgs),
    /// The W_1 modules M(a, b) and their quotients.
    W1(commands::w1::W1Args),
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("CONFKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("CONFKIT_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("CONFKIT_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Outcome {
    configure_threads().map_err(report::config_error)?;
    let seed = cli.common.seed;
    match &cli.command {
        Command::Axioms(a) => commands::axioms::run(a, seed),
        Command::Classify(a) => commands::classify::run(a),
        Command::Derham(a) => commands::derham::run(a),
        Command::Dual(a) => commands::dual::run(a),
        Command::W1(a) => commands::w1::run(a),
    }
}

fn emit(report: &Report, common: &Common) -> std::io::Result<()> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &common.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, &cli.common) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if report.passed() { 0 } else { 1 })
}
