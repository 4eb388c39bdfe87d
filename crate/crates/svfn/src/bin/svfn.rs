//! Thin command-line front end. All logic lives in the library
//! (`svfn::cli`); this binary only parses arguments, reads and writes
//! files, and maps outcomes to exit codes:
//! 0 success, 1 property/envelope failure, 2 unusable input,
//! 3 contract violation inside a computation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use svfn::cli::{
    cmd_battery, cmd_counterexample, cmd_eval, cmd_realize, CliError, CmdOutcome, OutputFormat,
};
use svfn::doc::Document;
use svfn::stepfn::TargetFunction;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Table => OutputFormat::Table,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "svfn",
    version,
    about = "Singular value functions over multi-matrix algebras and the dyadic tower"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate s_g for a documented element (single value with a
    /// k0_class in the document, full table without).
    Eval {
        /// JSON problem document.
        #[arg(long)]
        input: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the randomized property battery over random elements.
    Battery {
        /// Optional JSON document (block sizes, seed, trials).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of random trials (beats the document's value).
        #[arg(long)]
        trials: Option<usize>,
        /// Base RNG seed (beats the document's value).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Approximate a decreasing target by tower elements and report
    /// the geometric distance/increment envelopes.
    Realize {
        /// Optional JSON document carrying a target_function
        /// (default: the ramp 1 - t).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of refinement levels.
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the order-discontinuity report over the lexicographic
    /// pair group.
    Counterexample {
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn read_document(path: &PathBuf) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Document::from_json_str(&text).map_err(CliError::from)
}

fn deliver(outcome: CmdOutcome, output: Option<PathBuf>) -> Result<bool, CliError> {
    match output {
        Some(path) => std::fs::write(&path, &outcome.text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.ok)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Eval {
            input,
            output,
            format,
        } => {
            let doc = read_document(&input)?;
            deliver(cmd_eval(&doc, format.into())?, output)
        }
        Command::Battery {
            input,
            trials,
            seed,
            output,
            format,
        } => {
            let doc = match &input {
                Some(path) => Some(read_document(path)?),
                None => None,
            };
            let doc_trials = doc.as_ref().and_then(|d| d.trials).map(|t| t as usize);
            let doc_sizes = doc.as_ref().and_then(|d| d.algebra.clone());
            let trials = trials.or(doc_trials).unwrap_or(200);
            let seed = seed
                .or(doc.as_ref().and_then(|d| d.seed))
                .unwrap_or(1);
            deliver(
                cmd_battery(trials, seed, doc_sizes.as_deref(), format.into())?,
                output,
            )
        }
        Command::Realize {
            input,
            steps,
            output,
            format,
        } => {
            let target = match &input {
                Some(path) => read_document(path)?
                    .to_target()
                    .map_err(CliError::from)?
                    .ok_or_else(|| {
                        CliError::Usage("document carries no target_function".to_string())
                    })?,
                None => TargetFunction::one_minus_t(),
            };
            deliver(cmd_realize(&target, steps, format.into())?, output)
        }
        Command::Counterexample { output, format } => {
            deliver(cmd_counterexample(format.into()), output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
