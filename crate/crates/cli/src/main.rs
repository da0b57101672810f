//! `fusionkit` — verification and enumeration reports for fusion rings
//! and modular data.
//!
//! Every subcommand prints one report (human-readable by default, a JSON
//! envelope with `--json`) and exits 0 when all checks pass, 1 when a
//! check fails, 2 on input errors, and 3 on capacity or numerical errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use fusionkit::Shape;

mod commands;
mod report;

use commands::Options;
use report::Status;

#[derive(Parser)]
#[command(
    name = "fusionkit",
    version,
    about = "Verify fusion rings and modular data, search for completions, and build group doubles"
)]
struct Cli {
    /// Numerical tolerance for residual checks (defaults to 1e-9, or the
    /// tolerance stored in the input file where one exists)
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    /// Print the machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Directory for derived artifacts (completion rings, double data, ...)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fusion-ring file: axioms, dimensions, grading, nilpotency
    Check {
        /// Fusion-ring JSON file
        ring: PathBuf,
    },
    /// Verify a modular-data file: matrix checks, Verlinde ring, twist
    /// equation, Gauss sums, and a group-theoreticity certificate
    Modular {
        /// Modular-data JSON file (exact root-of-unity or float form)
        data: PathBuf,
    },
    /// Case analysis for a global dimension built from two primes
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Exponent pattern of the global dimension
        #[arg(long, value_enum)]
        shape: ShapeArg,
    },
    /// Complete a partially specified fusion ring by constrained search
    Search {
        /// Search-spec JSON file
        #[arg(long)]
        spec: PathBuf,
    },
    /// Modular data of the Drinfeld double of a finite group
    Double {
        /// Group JSON file (multiplication table or permutation generators)
        #[arg(long)]
        group: PathBuf,
        /// Unsupported; present so the limitation is reported explicitly
        #[arg(long, hide = true)]
        twist: bool,
    },
    /// Twist a graded ring by a cochain valued in its invertibles
    Twist {
        /// Fusion-ring JSON file
        #[arg(long)]
        ring: PathBuf,
        /// Cochain JSON file
        #[arg(long)]
        cochain: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    /// N = p·q⁴
    Pq4,
    /// N = p²·q²
    P2q2,
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let options = Options {
        tolerance: cli.tol,
        out: cli.out.clone(),
    };
    let outcome = match &cli.command {
        Command::Check { ring } => commands::check(ring, &options, started),
        Command::Modular { data } => commands::modular(data, &options, started),
        Command::Classify { p, q, shape } => {
            let (shape, name) = match shape {
                ShapeArg::Pq4 => (Shape::PQ4, "pq4"),
                ShapeArg::P2q2 => (Shape::P2Q2, "p2q2"),
            };
            commands::classify_profile(*p, *q, shape, name, &options, started)
        }
        Command::Search { spec } => commands::search(spec, &options, started),
        Command::Double { group, twist } => commands::double(group, *twist, &options, started),
        Command::Twist { ring, cochain } => commands::twist(ring, cochain, &options, started),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_human());
            }
            std::process::exit(match report.status {
                Status::Pass => 0,
                Status::Fail => 1,
            });
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_input() {
                2
            } else if e.is_capacity_or_numerical() {
                3
            } else {
                // Unsatisfiable constraints and non-integral fusion
                // coefficients are determinations, not malfunctions.
                1
            };
            std::process::exit(code);
        }
    }
}
