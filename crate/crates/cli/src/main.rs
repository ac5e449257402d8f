mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chamber_basis::Error;

/// Schema tag written at the top of every JSON report.
pub const SCHEMA: &str = "chamber-basis/1";

#[derive(Debug, Parser)]
#[command(
    name = "chamber-basis",
    version,
    about = "Chamber basis, structure constants and local system cohomology of real hyperplane arrangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Relative singular-value cutoff for numerical ranks.
    #[arg(long, global = true, env = "CHAMBER_BASIS_TOLERANCE", default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Seed for flag search and random sampling.
    #[arg(long, global = true, env = "CHAMBER_BASIS_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true, env = "CHAMBER_BASIS_JSON")]
    pub json: bool,

    /// Exact rational ranks for the Aomoto complex (needs rational weights).
    #[arg(long, global = true, env = "CHAMBER_BASIS_EXACT")]
    pub exact: bool,
}

#[derive(Debug, Args, Clone)]
pub struct Input {
    /// Arrangement file.
    #[arg(conflicts_with = "fixture", required_unless_present = "fixture")]
    pub path: Option<PathBuf>,

    /// Use a bundled arrangement instead of a file.
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct Weights {
    /// Comma-separated weights, each `p/q`, a real, or a complex `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,

    /// Write each differential as CSV (`row,col,re,im`) into this directory.
    #[arg(long, value_name = "DIR")]
    pub csv_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Clone)]
pub enum Command {
    /// Intersection poset, Möbius values, Poincaré polynomial and β.
    Poset(Input),
    /// Chambers with witnesses, and the chamber-count identities.
    Chambers(Input),
    /// Flag strata ch_F^q and sgn.
    Strata(Input),
    /// ξ matrices and the ν table.
    Basis(Input),
    /// Structure constants N and separating sets.
    Constants(Input),
    /// The Aomoto complex at the given weights.
    Aomoto {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        weights: Weights,
    },
    /// The minimal complex at the given weights.
    Minimal {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        weights: Weights,
    },
    /// Cohomology of both complexes at the given weights.
    Compare {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        weights: Weights,
    },
    /// Every invariant, plus the fixture tables when the input is a fixture.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Random weights per numerical check.
        #[arg(long, env = "CHAMBER_BASIS_SAMPLES", default_value_t = 20)]
        samples: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Poset(_) => "poset",
            Command::Chambers(_) => "chambers",
            Command::Strata(_) => "strata",
            Command::Basis(_) => "basis",
            Command::Constants(_) => "constants",
            Command::Aomoto { .. } => "aomoto",
            Command::Minimal { .. } => "minimal",
            Command::Compare { .. } => "compare",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Failures of a run, each with its own exit code.
#[derive(Debug)]
pub enum Failure {
    Io { path: PathBuf, message: String },
    UnknownFixture(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Io { .. } => "io",
            Failure::UnknownFixture(_) => "unknown_fixture",
            Failure::Library(e) => e.kind(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Io { path, message } => format!("{}: {message}", path.display()),
            Failure::UnknownFixture(name) => format!(
                "unknown fixture {name:?} (available: {})",
                chamber_basis::fixtures::names().join(", ")
            ),
            Failure::Library(e) => e.to_string(),
        }
    }

    /// 0 is success, 1 a failed check, 2 a usage error (from clap).
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io { .. } => 3,
            Failure::UnknownFixture(_) => 4,
            Failure::Library(e) => match e {
                Error::Parse { .. } => 10,
                Error::DimensionMismatch { .. } => 11,
                Error::InvalidArrangement(_) => 12,
                Error::InvalidFlag(_) => 13,
                Error::NonEssential => 14,
                Error::NotGeneric { .. } => 15,
                Error::StratumMismatch { .. } => 16,
                Error::FlagSearchExhausted { .. } => 17,
                Error::Dependent { .. } => 18,
                Error::DegreeMismatch { .. } => 19,
                Error::Unsolvable { .. } => 20,
                Error::FactorizationFailure { .. } => 21,
                Error::NotAComplex { .. } => 22,
                Error::InvalidWeights(_) => 23,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match commands::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", render::envelope(name, report.ok, report.json));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            if cli.json {
                println!("{}", render::error_envelope(name, &f));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.exit_code())
        }
    }
}
