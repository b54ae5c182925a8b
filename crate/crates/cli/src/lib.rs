//! `rcft` command-line front end.
//!
//! Exit codes: 0 success, 1 a check reported failure, 2 usage or input error,
//! 3 search budget exhausted.

pub mod commands;
pub mod config;
pub mod golden;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use config::{Config, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Verification(_) => EXIT_FAILED,
            Self::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<rcft::extensions::ExtensionError> for CliError {
    fn from(e: rcft::extensions::ExtensionError) -> Self {
        if e.is_budget() {
            Self::Budget(e.to_string())
        } else {
            Self::Verification(e.to_string())
        }
    }
}

impl From<rcft::InvariantError> for CliError {
    fn from(e: rcft::InvariantError) -> Self {
        match e {
            rcft::InvariantError::BudgetExceeded { .. } => Self::Budget(e.to_string()),
            other => Self::Verification(other.to_string()),
        }
    }
}

impl From<rcft::ModelError> for CliError {
    fn from(e: rcft::ModelError) -> Self {
        match e {
            rcft::ModelError::BadLevel(_)
            | rcft::ModelError::BadIndex { .. }
            | rcft::ModelError::BadLabel(_) => Self::Usage(e.to_string()),
            other => Self::Verification(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rcft",
    version,
    about = "Modular data, modular invariants and extensions of rational CFTs"
)]
pub struct Cli {
    /// Emit canonical JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and validate the modular data of a model.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Fusion ring checks.
    #[command(subcommand)]
    Fusion(FileCmd),
    /// Modular data checks.
    #[command(subcommand)]
    Mtc(FileCmd),
    /// Enumerate modular invariants.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Classify local extension candidates.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// The j-function and Monster data.
    #[command(subcommand)]
    Moonshine(MoonshineCmd),
    /// Jones index values.
    #[command(subcommand)]
    Index(IndexCmd),
    /// Record or verify golden outputs.
    #[command(subcommand)]
    Golden(GoldenCmd),
}

#[derive(Debug, Subcommand)]
pub enum ModelCmd {
    /// SU(2) at level k.
    Su2 {
        #[arg(long)]
        k: u32,
    },
    /// Virasoro minimal model with c = 1 - 6/(m(m+1)).
    Minimal {
        #[arg(long)]
        m: u32,
        /// Skip the dense fusion tensor.
        #[arg(long)]
        reduced: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum FileCmd {
    /// Check a JSON file.
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum InvariantsCmd {
    Su2 {
        #[arg(long)]
        k: u32,
    },
    Minimal {
        #[arg(long)]
        m: u32,
    },
    /// Coupling matrices between two modular data files.
    Hetero {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClassifyCmd {
    Su2 {
        #[arg(long)]
        k: u32,
    },
    Vir(VirArgs),
}

#[derive(Debug, Args)]
pub struct VirArgs {
    #[arg(long)]
    pub m: u32,
    /// Report the labeled graph pairs of all invariants.
    #[arg(long)]
    pub full_cft: bool,
    /// Report the boundary quadruple count.
    #[arg(long)]
    pub boundary: bool,
    /// Vacuum-row search on data without a dense fusion tensor.
    #[arg(long, conflicts_with = "full")]
    pub reduced: bool,
    /// Force full enumeration above the automatic ceiling.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Subcommand)]
pub enum MoonshineCmd {
    /// Coefficients of j and J through q^nmax.
    J {
        #[arg(long)]
        nmax: i64,
    },
    /// Decompose the q^n coefficient of J into Monster irreducible dimensions.
    Mckay {
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, default_value_t = rcft::qseries::DEFAULT_MULTIPLICITY_BOUND)]
        bound: u32,
    },
    /// Order of the Monster group.
    MonsterOrder,
}

#[derive(Debug, Subcommand)]
pub enum IndexCmd {
    #[command(group(clap::ArgGroup::new("mode").required(true).args(["n", "test"])))]
    Jones {
        /// List 4cos²(π/n) for 3 ≤ n ≤ N.
        #[arg(long)]
        n: Option<u32>,
        /// Test whether X is an admissible index.
        #[arg(long, allow_negative_numbers = true)]
        test: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GoldenCmd {
    Verify {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    Record {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Parse `argv` (without the program name), run, write to `out`, return the exit code.
pub fn run<W: Write>(argv: &[String], out: &mut W) -> i32 {
    let full = std::iter::once("rcft".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = match Config::load() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return e.exit_code();
        }
    };
    let format = if cli.json {
        OutputFormat::Json
    } else {
        config.output_format
    };
    match commands::dispatch(&cli.command, &config) {
        Ok(rendered) => {
            let _ = writeln!(out, "{}", rendered.render(format));
            if rendered.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            if format == OutputFormat::Json {
                let v = serde_json::json!({ "error": e.to_string(), "exit": e.exit_code() });
                let _ = writeln!(out, "{}", output::canonical_json(&v));
            } else {
                let _ = writeln!(out, "error: {e}");
            }
            e.exit_code()
        }
    }
}

/// [`run`] into a string.
pub fn run_capture(argv: &[String]) -> (i32, String) {
    let mut buf = Vec::new();
    let code = run(argv, &mut buf);
    (code, String::from_utf8_lossy(&buf).into_owned())
}
