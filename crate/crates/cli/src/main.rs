//! `ultracenter`: centers of distances, representing trees and extremal
//! constructions for finite ultrametric spaces, from the command line.
//!
//! Exit codes: 0 ok, 1 domain error or axiom violation, 2 unreadable or
//! malformed input, 3 internal invariant breach (a bug).

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ultracenter::{CanonicalMode, Error, ErrorCategory};

#[derive(Parser, Debug)]
#[command(
    name = "ultracenter",
    version,
    about = "Center of distances of finite ultrametric spaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Input file; `-` reads standard input. Alternative to the positional file.
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, short, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest n for enumeration-based commands.
    #[arg(long, global = true, env = "ULTRACENTER_CAP", default_value_t = ultracenter::explore::ExploreConfig::DEFAULT_CAP)]
    pub cap: usize,
    /// Largest number of points a construction may produce.
    #[arg(long, global = true, env = "ULTRACENTER_BUDGET", default_value_t = ultracenter::PointBudget::DEFAULT.0)]
    pub budget: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Isometry,
    WeakSimilarity,
}

impl From<Mode> for CanonicalMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Isometry => CanonicalMode::Isometry,
            Mode::WeakSimilarity => CanonicalMode::WeakSimilarity,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the metric and ultrametric axioms of a space file (JSON or CSV).
    Validate { file: Option<PathBuf> },
    /// Center of distances by every registered algorithm.
    Center {
        file: Option<PathBuf>,
        /// Run a single algorithm instead of all of them.
        #[arg(long)]
        algorithm: Option<String>,
    },
    /// Parts of the diametrical graph.
    Partition { file: Option<PathBuf> },
    /// Representing tree of a space.
    Tree {
        file: Option<PathBuf>,
        /// Graphviz output, same as `--format dot`.
        #[arg(long)]
        dot: bool,
        /// Mode of the canonical encoding printed in text format.
        #[arg(long, value_enum, default_value_t = Mode::Isometry)]
        mode: Mode,
    },
    /// Space realized by a labeled tree file.
    Realize { file: Option<PathBuf> },
    /// Isometry or weak similarity between two spaces.
    Similarity {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Isometry)]
        mode: Mode,
    },
    /// Build a space from a JSON construction spec such as
    /// '{"kind":"binary_word","n":3}'.
    Generate { spec: Option<String> },
    /// Largest center size for n = 1..=N by exhaustive enumeration.
    BoundCheck { n_max: usize },
    /// One line per weak-similarity class of N-point spaces.
    Enumerate { n: usize },
    /// Search for counterexamples to conjecture 1 or 2, or build a witness
    /// for conjecture 3.
    Conjecture {
        id: u8,
        /// Spaces on 2^L points (conjectures 1 and 2).
        #[arg(long, default_value_t = 2)]
        l: u32,
        /// Label values tried for conjecture 2.
        #[arg(long, default_value_t = 4)]
        alphabet: u64,
        /// Comma-separated target set for conjecture 3, e.g. "0,2,3".
        #[arg(long)]
        set: Option<String>,
    },
    /// Check the library's invariants on seeded random spaces.
    PropertyTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 48)]
        max_points: usize,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err.category() {
            ErrorCategory::Domain | ErrorCategory::Resource => 1,
            ErrorCategory::Structural => 2,
            ErrorCategory::Internal => 3,
        };
        let message = if code == 3 {
            format!(
                "internal invariant breached, please report this with the input that caused it\n{err}\n{err:#?}"
            )
        } else {
            err.to_string()
        };
        Failure { code, message }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
