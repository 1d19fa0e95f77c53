//! Line-oriented agent session on standard input.

use std::io::{BufRead, IsTerminal, Write};

use erotetic::formula::parse_dformula_list;
use erotetic::strategy::AgentState;

use crate::commands::{render_event, OK};
use crate::config::Config;
use crate::error::CliError;
use crate::Outcome;

const HELP: &str = "\
Enter one fact per line. Commands:
  :facts   list the facts so far
  :active  list the sequents still in play
  :help    show this text
  :quit    end the session
";

pub fn run(question: &str, facts: &str, cfg: &Config) -> Result<Outcome, CliError> {
    let q = question.parse().map_err(|e| CliError::Parse {
        what: "question".into(),
        message: format!("{e}"),
    })?;
    let facts = parse_dformula_list(facts)
        .map_err(|e| CliError::Parse {
            what: "facts".into(),
            message: e.to_string(),
        })?
        .into_iter()
        .collect();
    let mut state = AgentState::new(q, facts, cfg.assignment.clone(), cfg.exceptions.clone());
    let interactive = std::io::stdin().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut shown = 0;
    let mut flush = |state: &AgentState, out: &mut dyn Write| {
        for e in &state.log[shown..] {
            let _ = out.write_all(render_event(e, cfg.format).as_bytes());
        }
        shown = state.log.len();
    };
    flush(&state, &mut out);
    for (i, line) in std::io::stdin().lock().lines().enumerate() {
        if interactive {
            let _ = write!(out, "> ");
            let _ = out.flush();
        }
        let line = line.map_err(|source| CliError::Io {
            path: "<stdin>".into(),
            source,
        })?;
        match line.trim() {
            ":quit" | ":q" => break,
            ":help" => {
                let _ = out.write_all(HELP.as_bytes());
            }
            ":facts" => {
                for f in &state.facts {
                    let _ = writeln!(out, "{f}");
                }
            }
            ":active" => {
                for (i, a) in state.active.iter().enumerate() {
                    let _ = writeln!(out, "{i}: {}", a.sequent);
                }
            }
            cmd if cmd.starts_with(':') => {
                let _ = writeln!(out, "unknown command {cmd}; try :help");
            }
            text => {
                if state.answer.is_some() {
                    let _ = writeln!(out, "already answered; :quit to leave");
                    continue;
                }
                state.ingest_line(i + 1, text);
                flush(&state, &mut out);
            }
        }
    }
    state.finish();
    flush(&state, &mut out);
    Ok(Outcome {
        code: OK,
        text: String::new(),
    })
}
