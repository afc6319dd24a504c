//! `umbra`: generate, evaluate and verify binomial-type sequences.

mod commands;
mod output;
mod source;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "umbra",
    version,
    about = "Polynomial sequences of binomial type from their cumulants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    /// Catalog family: monomial, rising, falling, abel, laguerre_plus, laguerre_paper.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Catalog parameter, e.g. `a=1/2` for abel. Repeatable.
    #[arg(long, value_name = "KEY=VALUE")]
    pub param: Vec<String>,
    /// Comma-separated cumulants c_1,c_2,... as integers or a/b.
    #[arg(long, allow_hyphen_values = true)]
    pub cumulants: Option<String>,
    /// JSON file with {"name"?, "cumulants": [...]} or a triangle {"rows": [[...]]}.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Exact,
    Genfun,
    Spectral,
    Pathexp,
    Pathapprox,
    Evolve,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient triangle a_{n,k} for n = 0..=N.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// p_n(x) by one engine.
    Eval(EvalArgs),
    /// Binomial identity, recurrence, p_n(0) and the evolution equation.
    Check {
        #[command(flatten)]
        source: SourceArgs,
        /// Largest row; defaults to 10, or to the last row of a triangle file.
        #[arg(long)]
        n: Option<usize>,
        /// Also compare against the published Hamiltonian of a catalog family.
        #[arg(long)]
        hamiltonian_from_paper: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Error of the first-order discretization against the exact value.
    Pathint {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(
            long = "N",
            value_delimiter = ',',
            default_value = "8,16,32,64,128,256"
        )]
        steps: Vec<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Every engine against the catalog closed forms.
    Selftest {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, value_name = "KEY=VALUE")]
        param: Vec<String>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub n: usize,
    /// Rational for the exact engines; decimal allowed for spectral and numeric evolve.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, value_enum, default_value = "exact")]
    pub engine: Engine,
    /// Number of slices for `pathapprox`.
    #[arg(long = "N")]
    pub slices: Option<usize>,
    /// Runge-Kutta steps; switches `evolve` to the numeric integrator.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Relative tolerance between successive spectral estimates.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Starting node count for the spectral engine (power of two).
    #[arg(long)]
    pub quad_points: Option<usize>,
    /// Sum `pathapprox` over explicit compositions instead of by series algebra.
    #[arg(long)]
    pub enumerate: bool,
    /// Cap on enumerated compositions.
    #[arg(long, env = "UMBRA_MAX_PATHS")]
    pub max_paths: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(umbra_core::Error),
}

impl From<umbra_core::Error> for CliError {
    fn from(e: umbra_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(umbra_core::Error::NoConvergence { .. }) => 1,
            _ => 2,
        }
    }
}

/// Text for stdout and whether every verification passed.
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { source, n, format } => commands::gen(&source, n, format),
        Command::Eval(args) => commands::eval(&args),
        Command::Check {
            source,
            n,
            hamiltonian_from_paper,
            format,
        } => commands::check(&source, n, hamiltonian_from_paper, format),
        Command::Pathint {
            source,
            n,
            x,
            steps,
            format,
        } => commands::pathint(&source, n, &x, &steps, format),
        Command::Selftest {
            catalog,
            param,
            n,
            format,
        } => commands::selftest(catalog.as_deref(), &param, n, format),
    };
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("umbra: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
