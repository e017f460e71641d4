mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::exit_code_for;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "wrep", version, about = "Representations of the welded braid group")]
pub struct Cli {
    /// Numeric tolerance for comparisons in the complex ring.
    #[arg(long, global = true, env = "WREP_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for randomized commands.
    #[arg(long, global = true, env = "WREP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "WREP_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: Output,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Letter cap for words in the free group.
    #[arg(long, global = true, env = "WREP_MAX_LETTERS", default_value_t = 1_000_000)]
    pub max_letters: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// tilde-beta, hat-beta, tilde-tau, psi3, burau-W, burau-V, tau, chi or X.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Cube root of 1/z^2 used for psi3 when --x is absent.
    #[arg(long)]
    pub x_root: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    All,
    Sigma,
    Alpha,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family member and print its JSON.
    Gen(FamilyArgs),
    /// Check every defining relation.
    Verify { rep: PathBuf },
    /// Decide irreducibility and find an invariant subspace.
    Irreducible {
        rep: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        restrict: Which,
    },
    /// Decide whether two representations are equivalent.
    Equivalent { a: PathBuf, b: PathBuf },
    /// Recognize an extension of Burau or the standard representation.
    Identify { rep: PathBuf },
    /// Numerically rediscover all extensions from the relations.
    Search {
        #[arg(long, default_value = "burau")]
        restriction: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Write the search report to this file.
        #[arg(long = "json")]
        json_out: Option<PathBuf>,
    },
    /// Pairwise equivalence table over a grid of family instances.
    Distinct { grid: PathBuf },
    /// Print a word in the kernel of the representation.
    Witness { rep: PathBuf },
    /// Substitute values for variables, e.g. `t=2 q=1+i`.
    Specialize {
        rep: PathBuf,
        assignments: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("error: tolerance must be positive");
        return ExitCode::from(2);
    }
    welded_core::scalar::set_tolerance(cli.tol);
    welded_core::free_action::set_letter_cap(cli.max_letters);
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(report) => {
            if let Err(e) = report.emit(cli.output, cli.out.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
