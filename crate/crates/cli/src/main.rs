use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod config;
mod run;

use config::Config;

#[derive(Parser)]
#[command(name = "qorbit", version, about = "Exact checks of twisted module actions of quantized enveloping algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report every check.
    Verify(VerifyArgs),
    /// Build the module generated by 1 and archive its matrices.
    Rep {
        #[command(subcommand)]
        instance: RepInstance,
    },
    /// Evaluate the twisting map on an element of the free algebra.
    PhiEval(PhiEvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coassoc,
    Leibniz,
    ModuleLaw,
    PhiRelations,
    Eq35,
    Ybe,
    KIdentities,
    Eq52,
    Adjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the JSON artifact to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Record wall-clock time in reports (makes them non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// sl2, frt, adjoint or all.
    #[arg(long)]
    pub instance: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "A")]
    pub series: String,
    /// Cartan type for the adjoint instance: A1 or A2.
    #[arg(long = "type")]
    pub cartan: Option<String>,
    /// `formal` or an integer.
    #[arg(long, default_value = "formal", allow_hyphen_values = true)]
    pub sigma: String,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// JSON input: an R-matrix for `ybe`, a structure set for `k-identities`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct RepCommon {
    /// Evaluate the archive at a rational value, e.g. `q=3/2`.
    #[arg(long)]
    pub substitute: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Subcommand, Debug)]
pub enum RepInstance {
    /// sl(2) acting on polynomials in `zb`.
    Sl2 {
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[command(flatten)]
        common: RepCommon,
    },
    /// The L± algebra acting on the big cell.
    Frt {
        #[arg(long, default_value = "A")]
        series: String,
        #[arg(long)]
        n: usize,
        /// Highest-weight labels `n_1,...,n_{N-1}`.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        #[command(flatten)]
        common: RepCommon,
    },
    /// The twisted adjoint action on the algebra generated by the `e_i`.
    Adjoint {
        #[arg(long = "type")]
        cartan: String,
        /// Pairings `⟨λ,α_i⟩`; finite modules need them non-positive.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[command(flatten)]
        common: RepCommon,
    },
}

#[derive(Args, Debug)]
pub struct PhiEvalArgs {
    /// sl2, frt or adjoint.
    #[arg(long)]
    pub instance: String,
    /// A word or linear combination over the instance's generators.
    #[arg(long)]
    pub word: String,
    /// Integral σ for sl2; formal if absent.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<i64>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u32>>,
    #[arg(long = "type", default_value = "A1")]
    pub cartan: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<i64>>,
    #[command(flatten)]
    pub output: Output,
}

/// Why a command did not exit 0.
#[derive(Debug)]
pub enum Failure {
    Check,
    Usage(String),
    Infinite(String),
    Other(String),
}

impl From<qorbit::Error> for Failure {
    fn from(e: qorbit::Error) -> Self {
        use qorbit::scalar::ScalarError as S;
        use qorbit::Error as E;
        match e {
            E::Usage(_)
            | E::Parse(_)
            | E::UnknownGenerator(_)
            | E::Scalar(S::Usage(_) | S::Parse(_) | S::UnknownVariable(_)) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<qorbit::scalar::ScalarError> for Failure {
    fn from(e: qorbit::scalar::ScalarError) -> Self {
        Failure::from(qorbit::Error::from(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match Config::load() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qorbit: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Verify(a) => run::verify(&config, &a),
        Command::Rep { instance } => run::rep(&config, &instance),
        Command::PhiEval(a) => run::phi_eval(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("qorbit: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Infinite(m)) => {
            eprintln!("qorbit: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("qorbit: {m}");
            ExitCode::from(1)
        }
    }
}
