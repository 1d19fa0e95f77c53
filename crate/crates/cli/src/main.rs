//! `erotetic`: parse, prove and check sequents, test evocation and
//! implication, and run the inquiry agent.
//!
//! Exit codes: 0 ok or provable, 2 usage or parse error, 3 defeated or
//! answered, 4 not derivable, 5 search bound hit.

mod commands;
mod config;
mod error;
mod repl;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use config::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorChoice {
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Semantic,
    Proof,
    Both,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Defeater assignment file (`atom : {l1, l2}, {l3}` per line).
    #[arg(long, global = true, env = "EROTETIC_DEFEATERS", value_name = "FILE")]
    pub defeaters: Option<PathBuf>,
    /// TOML file with defaults for the other options.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub color: Option<ColorChoice>,
    /// Node budget of the generic proof search.
    #[arg(long, global = true, value_name = "N")]
    pub max_nodes: Option<usize>,
    /// Branch length limit of the generic proof search.
    #[arg(long, global = true, value_name = "N")]
    pub max_depth: Option<usize>,
    /// Extra exception members for agent sequents, e.g. `[{w}, {x, y}]`.
    #[arg(long, global = true, value_name = "MEMBERS")]
    pub exceptions: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "erotetic", version, about = "Defeasible erotetic sequent prover")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula, question or sequent and print it canonically.
    Parse { expr: String },
    /// Decide a sequent such as `p | q, ~p |- [{r}] q`.
    Prove {
        sequent: String,
        /// Write the proof tree as JSON to FILE.
        #[arg(long, value_name = "FILE")]
        emit_proof: Option<PathBuf>,
    },
    /// Classify a JSON proof tree as proof, paraproof or not a derivation.
    Check {
        file: PathBuf,
        /// Axioms must carry exactly their assigned defeater set.
        #[arg(long)]
        exact_axioms: bool,
    },
    /// Does a comma-separated list of formulas evoke a question?
    Evokes {
        premises: String,
        question: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
    /// Do the formulas and a question strongly regularly imply another?
    Implies {
        premises: String,
        question: String,
        implied: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
    /// Look for subquestions of a principal question and feed facts.
    Agent {
        #[arg(long)]
        question: String,
        /// Comma-separated initial facts.
        #[arg(long, default_value = "")]
        facts: String,
        /// Newline-separated facts; `-` reads standard input.
        #[arg(long, value_name = "FILE", conflicts_with = "repl")]
        stream: Option<String>,
        /// Read facts and `:` commands interactively.
        #[arg(long)]
        repl: bool,
    },
}

/// What a command prints, and how the process exits.
pub struct Outcome {
    pub code: u8,
    pub text: String,
}

fn run(cli: Cli) -> Result<Outcome, error::CliError> {
    let cfg = Config::resolve(&cli.global)?;
    match cli.command {
        Command::Parse { expr } => commands::parse(&expr, &cfg),
        Command::Prove { sequent, emit_proof } => commands::prove(&sequent, emit_proof.as_deref(), &cfg),
        Command::Check { file, exact_axioms } => commands::check(&file, exact_axioms, &cfg),
        Command::Evokes {
            premises,
            question,
            mode,
        } => commands::evokes(&premises, &question, mode, &cfg),
        Command::Implies {
            premises,
            question,
            implied,
            mode,
        } => commands::implies(&premises, &question, &implied, mode, &cfg),
        Command::Agent {
            question,
            facts,
            stream,
            repl,
        } => {
            if repl {
                repl::run(&question, &facts, &cfg)
            } else {
                commands::agent(&question, &facts, stream.as_deref(), &cfg)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
