//! `hpt`: exact computations on homotopy probability spaces.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure,
//! 2 on an input error.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::Outcome;
use input::InputError;

#[derive(Parser, Debug)]
#[command(name = "hpt", version, about = "Exact computations on homotopy probability spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gaussian moments E(x^n), by recurrence, cross-checked by pair partitions.
    Moments {
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Joint cumulants of closed degree-0 elements of the homotopy Gaussian.
    Cumulants {
        /// Expressions such as `x` or `x^2 - 1`; put `--` before one that
        /// starts with `-`.
        exprs: Vec<String>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The explicit homotopy between p(x) and q(x) with equal cumulants.
    Homotopy {
        #[arg(allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Chevalley-Eilenberg complex of a Lie algebra action and its cone conditions.
    Ce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Algebraic cone of a truncated probability space.
    Cone {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Joint cumulants of (x, 1) against (-x, 1).
    Remark {
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn run(command: &Command) -> Result<Outcome, InputError> {
    match command {
        Command::Moments { max_order, input } => commands::moments(*max_order, input.as_deref()),
        Command::Cumulants {
            exprs,
            max_order,
            input,
        } => commands::cumulants(exprs, *max_order, input.as_deref()),
        Command::Homotopy { p, q, max_order, input } => {
            commands::homotopy(p.as_deref(), q.as_deref(), *max_order, input.as_deref())
        }
        Command::Ce { input, truncation } => commands::ce(input, *truncation),
        Command::Cone { input, max_order } => commands::cone(input, *max_order),
        Command::Remark { max_order, input } => commands::remark(*max_order, input.as_deref()),
    }
}

/// Writes to stdout; a closed pipe (`hpt ... | head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            let code = if outcome.passed { 0 } else { 1 };
            match cli.format {
                Format::Text => emit(&outcome.text),
                Format::Json => {
                    let mut value = outcome.json;
                    value["exit_code"] = json!(code);
                    emit(&format!(
                        "{}\n",
                        serde_json::to_string_pretty(&value).expect("json values serialize")
                    ));
                }
            }
            ExitCode::from(code)
        }
        Err(InputError(msg)) => {
            match cli.format {
                Format::Text => eprintln!("error: {msg}"),
                Format::Json => emit(&format!("{}\n", json!({"error": msg, "exit_code": 2}))),
            }
            ExitCode::from(2)
        }
    }
}
