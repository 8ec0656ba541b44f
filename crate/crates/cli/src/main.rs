mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kacpoly::dimension::DimensionVector;
use kacpoly::oracle::{check_prime, OracleConfig, DEFAULT_ENDOMORPHISM_BUDGET, DEFAULT_ENUMERATION_BUDGET};
use kacpoly::quiver::Quiver;

use crate::report::Report;

/// Kac polynomials, DT invariants and nilpotent CoHA characters of quivers.
#[derive(Parser)]
#[command(name = "kacpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kac polynomials, DT invariants and generator weights for 0 < γ ≤ box
    Kac(KacArgs),
    /// Cross-check the closed formulas against finite-field counts
    Verify(VerifyArgs),
    /// Print the tripled quiver, its potential, cut and relations
    Triple(TripleArgs),
    /// Contributions of each Jordan type to one coefficient
    Strata(StrataArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args)]
struct Common {
    /// Quiver file
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the Hua sums and oracle enumeration
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct KacArgs {
    #[command(flatten)]
    common: Common,
    /// Truncation box `n1,n2,...` in vertex order, or one integer for all vertices
    #[arg(long = "box")]
    bound: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "box")]
    bound: String,
    /// Primes for the finite-field oracle
    #[arg(long, value_delimiter = ',', value_parser = parse_prime, default_value = "2,3")]
    primes: Vec<u32>,
    /// Maximum number of representations enumerated per dimension vector
    #[arg(long, env = "KACPOLY_BUDGET")]
    budget_enum: Option<u128>,
    /// Maximum endomorphism algebra size scanned per representation
    #[arg(long, env = "KACPOLY_BUDGET")]
    budget_end: Option<u128>,
    /// Random reorientations compared in the orientation check
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Seed for the reorientation trials
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct TripleArgs {
    #[command(flatten)]
    common: Common,
    /// Dimension vector for the shift constants (default: all ones)
    #[arg(long = "box")]
    bound: Option<String>,
}

#[derive(Args)]
struct StrataArgs {
    #[command(flatten)]
    common: Common,
    /// The dimension vector γ
    #[arg(long = "box")]
    bound: String,
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    check_prime(p).map_err(|e| e.to_string())?;
    Ok(p)
}

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// exit 1
    Check(String),
    /// exit 2
    Input(String),
    /// exit 3
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Check(m) | CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

fn load(common: &Common) -> Result<Quiver, CliError> {
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Input(format!("cannot configure threads: {e}")))?;
    }
    let text = std::fs::read_to_string(&common.quiver)
        .map_err(|e| CliError::Input(format!("{}: {e}", common.quiver.display())))?;
    Quiver::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", common.quiver.display())))
}

fn parse_box(spec: &str, quiver: &Quiver) -> Result<DimensionVector, CliError> {
    DimensionVector::parse_box(spec, quiver.vertex_count()).map_err(|e| CliError::Input(format!("--box: {e}")))
}

fn run(cli: Cli) -> Result<(Report, Format), CliError> {
    match cli.command {
        Command::Kac(args) => {
            let quiver = load(&args.common)?;
            let bound = parse_box(&args.bound, &quiver)?;
            Ok((commands::kac(&quiver, &bound)?, args.common.format))
        }
        Command::Verify(args) => {
            let quiver = load(&args.common)?;
            let bound = parse_box(&args.bound, &quiver)?;
            let config = OracleConfig {
                enumeration_budget: args.budget_enum.unwrap_or(DEFAULT_ENUMERATION_BUDGET),
                endomorphism_budget: args.budget_end.unwrap_or(DEFAULT_ENDOMORPHISM_BUDGET),
            };
            let opts = commands::VerifyOptions {
                primes: args.primes,
                config,
                trials: args.trials,
                seed: args.seed,
            };
            Ok((commands::verify(&quiver, &bound, &opts)?, args.common.format))
        }
        Command::Triple(args) => {
            let quiver = load(&args.common)?;
            let gamma = match &args.bound {
                Some(spec) => parse_box(spec, &quiver)?,
                None => DimensionVector::constant(quiver.vertex_count(), 1),
            };
            Ok((commands::triple(&quiver, &gamma)?, args.common.format))
        }
        Command::Strata(args) => {
            let quiver = load(&args.common)?;
            let gamma = parse_box(&args.bound, &quiver)?;
            Ok((commands::strata(&quiver, &gamma)?, args.common.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
