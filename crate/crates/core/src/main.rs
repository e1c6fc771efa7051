use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coupling_core::cli::{self, Algorithm, ResultDocument};
use coupling_core::rational::Rational;
use coupling_core::selftest::run_selftest;

#[derive(Parser)]
#[command(name = "couplings", version, about = "Exact couplings supported on a relation")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckAlgorithm {
    Flow,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoupleAlgorithm {
    Flow,
    Blowup,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a coupling supported on the relation exists.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckAlgorithm::Flow)]
        algorithm: CheckAlgorithm,
    },
    /// Build a coupling, or a violating set.
    Couple {
        #[arg(long)]
        input: PathBuf,
        /// Return a coupling whose support is a forest.
        #[arg(long)]
        forest: bool,
        /// Allow up to this much mass off the relation (e.g. 1/4).
        #[arg(long)]
        epsilon: Option<Rational>,
        #[arg(long, value_enum, default_value_t = CoupleAlgorithm::Flow)]
        algorithm: CoupleAlgorithm,
    },
    /// Perfect matching on the relation, ignoring masses.
    Match {
        #[arg(long)]
        input: PathBuf,
        /// Allow the matching to miss up to this many vertices.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Least slack that makes the condition hold.
    Deficiency {
        #[arg(long)]
        input: PathBuf,
    },
    /// Cross-check all algorithms on seeded random instances.
    Selftest {
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn emit(doc: &ResultDocument, format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
    ExitCode::from(doc.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let doc = match args.command {
        Command::Check { input, algorithm } => {
            let algorithm = match algorithm {
                CheckAlgorithm::Flow => Algorithm::Flow,
                CheckAlgorithm::Bruteforce => Algorithm::Bruteforce,
            };
            cli::cmd_check(&input, algorithm)
        }
        Command::Couple {
            input,
            forest,
            epsilon,
            algorithm,
        } => {
            let algorithm = match algorithm {
                CoupleAlgorithm::Flow => Algorithm::Flow,
                CoupleAlgorithm::Blowup => Algorithm::Blowup,
            };
            cli::cmd_couple(&input, forest, epsilon.as_ref(), algorithm)
        }
        Command::Match { input, k } => cli::cmd_match(&input, k),
        Command::Deficiency { input } => cli::cmd_deficiency(&input),
        Command::Selftest { size, count, seed } => match run_selftest(size, count, seed) {
            Ok(report) => {
                match args.output {
                    Format::Json => print!("{}", report.to_json()),
                    Format::Text => print!("{}", report.to_text()),
                }
                return ExitCode::from(report.exit_code() as u8);
            }
            Err(e) => ResultDocument::from(e),
        },
    };
    emit(&doc, args.output)
}
