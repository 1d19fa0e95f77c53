use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use erotetic::calculus::{format_path, Checker, Classification, ProofTree};
use erotetic::formula::{parse_dformula_list, parse_sform, DFormula, Question, SForm};
use erotetic::prover::{decide_shape, prove as decide, prove_eimp, prove_evocation, Verdict};
use erotetic::semantics::{evocation_check, implication_violations, EvocationFailure, ImplicationViolation};
use erotetic::sequent::{parse_sequent, DefeaterSet};
use erotetic::strategy::{run_agent, Event};
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::CliError;
use crate::{Format, Mode, Outcome};

pub const OK: u8 = 0;
pub const DEFEATED: u8 = 3;
pub const NOT_DERIVABLE: u8 = 4;
pub const UNKNOWN: u8 = 5;

fn parse_err(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Parse {
        what: what.to_string(),
        message: e.to_string(),
    }
}

pub fn paint(cfg: &Config, code: u8, word: &str) -> String {
    if !cfg.color {
        return word.to_string();
    }
    let c = match code {
        OK => "32",
        DEFEATED => "33",
        _ => "31",
    };
    format!("\x1b[{c}m{word}\x1b[0m")
}

fn json_out(code: u8, v: Value) -> Outcome {
    Outcome {
        code,
        text: format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize")),
    }
}

fn question(text: &str) -> Result<Question, CliError> {
    match parse_sform(text).map_err(|e| parse_err("question", e))? {
        SForm::Q(q) => Ok(q),
        SForm::D(d) => Err(CliError::Usage(format!("expected a question, found the formula {d}"))),
    }
}

fn premises(text: &str) -> Result<Vec<DFormula>, CliError> {
    parse_dformula_list(text).map_err(|e| parse_err("premises", e))
}

pub fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Provable(_) => OK,
        Verdict::Defeated(_) => DEFEATED,
        Verdict::NotDerivable => NOT_DERIVABLE,
        Verdict::Unknown(_) => UNKNOWN,
    }
}

pub fn parse(expr: &str, cfg: &Config) -> Result<Outcome, CliError> {
    let (kind, canonical, grouped, shape) = if expr.contains("|-") {
        let s = parse_sequent(expr).map_err(|e| parse_err("sequent", e))?;
        ("sequent", s.to_string(), None, Some(decide_shape(&s).label()))
    } else {
        match parse_sform(expr).map_err(|e| parse_err("expression", e))? {
            SForm::Q(q) => ("question", q.to_string(), None, None),
            SForm::D(d) => ("formula", d.to_string(), Some(d.grouped()), None),
        }
    };
    if cfg.format == Format::Json {
        let mut v = json!({ "kind": kind, "canonical": canonical });
        if let Some(g) = grouped {
            v["grouped"] = g.into();
        }
        if let Some(s) = shape {
            v["shape"] = s.into();
        }
        return Ok(json_out(OK, v));
    }
    let mut text = format!("{canonical}\n");
    if let Some(g) = grouped {
        writeln!(text, "grouped: {g}").unwrap();
    }
    if let Some(s) = shape {
        writeln!(text, "shape: {s}").unwrap();
    }
    Ok(Outcome { code: OK, text })
}

pub fn prove(sequent: &str, emit: Option<&Path>, cfg: &Config) -> Result<Outcome, CliError> {
    let s = parse_sequent(sequent).map_err(|e| parse_err("sequent", e))?;
    let shape = decide_shape(&s).label();
    let v = decide(&s, &cfg.assignment, &cfg.bounds);
    let code = verdict_code(&v);
    if let (Some(path), Some(t)) = (emit, v.proof()) {
        std::fs::write(path, t.to_json() + "\n").map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    if cfg.format == Format::Json {
        let mut j = v.to_json();
        j["shape"] = shape.into();
        j["sequent"] = s.to_string().into();
        return Ok(json_out(code, j));
    }
    let mut text = format!("{} ({shape})\n", paint(cfg, code, &v.to_string()));
    if let Some(t) = v.proof() {
        text.push_str(&t.render());
    }
    Ok(Outcome { code, text })
}

pub fn check(file: &Path, exact: bool, cfg: &Config) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.display().to_string(),
        source,
    })?;
    let tree = ProofTree::from_json(&text).map_err(|e| parse_err(&format!("proof file {}", file.display()), e))?;
    let c = Checker::new(&cfg.assignment).exact_axioms(exact).check_tree(&tree);
    let code = match c {
        Classification::Proof => OK,
        Classification::Paraproof { .. } => DEFEATED,
        Classification::NotADerivation { .. } => NOT_DERIVABLE,
    };
    if cfg.format == Format::Json {
        let mut v = json!({ "classification": c.label() });
        match &c {
            Classification::NotADerivation { path, reason } => {
                v["path"] = format_path(path).into();
                v["reason"] = reason.to_string().into();
            }
            Classification::Paraproof { defeated } => {
                v["defeated"] = defeated.iter().map(|p| format_path(p)).collect();
            }
            Classification::Proof => {}
        }
        return Ok(json_out(code, v));
    }
    Ok(Outcome {
        code,
        text: format!("{}\n", paint(cfg, code, &c.to_string())),
    })
}

/// Shared reporting for `evokes` and `implies`.
struct Modes {
    semantic: Option<(bool, u8, Value, String)>,
    proof: Option<Verdict>,
}

impl Modes {
    fn finish(self, cfg: &Config) -> Outcome {
        let proof_ok = self.proof.as_ref().map(Verdict::is_provable);
        let code = match (&self.semantic, &self.proof) {
            (Some((false, c, ..)), _) => *c,
            (_, Some(v)) => verdict_code(v),
            _ => OK,
        };
        if cfg.format == Format::Json {
            let mut v = json!({});
            if let Some((holds, _, detail, _)) = &self.semantic {
                v["semantic"] = json!({ "holds": holds, "detail": detail });
            }
            if let Some(p) = &self.proof {
                v["proof"] = p.to_json();
            }
            if let (Some((holds, ..)), Some(p)) = (&self.semantic, proof_ok) {
                v["agree"] = (*holds == p).into();
            }
            return json_out(code, v);
        }
        let mut text = String::new();
        if let Some((holds, c, _, why)) = &self.semantic {
            let word = paint(cfg, if *holds { OK } else { *c }, &holds.to_string());
            writeln!(text, "semantic: {word}{why}").unwrap();
        }
        if let Some(p) = &self.proof {
            writeln!(text, "proof: {}", paint(cfg, verdict_code(p), &p.to_string())).unwrap();
            if let Some(t) = p.proof() {
                text.push_str(&t.render());
            }
        }
        Outcome { code, text }
    }
}

pub fn evokes(xs: &str, q: &str, mode: Mode, cfg: &Config) -> Result<Outcome, CliError> {
    let xs = premises(xs)?;
    let q = question(q)?;
    let semantic = (mode != Mode::Proof).then(|| match evocation_check(&xs, &q) {
        Ok(()) => (true, OK, Value::Null, String::new()),
        Err(EvocationFailure::Answered(a)) => (
            false,
            DEFEATED,
            json!({ "answered": a.to_string() }),
            format!(" (answered by {a})"),
        ),
        Err(EvocationFailure::Unsound) => (
            false,
            NOT_DERIVABLE,
            json!({ "unsound": true }),
            " (no answer need be true)".to_string(),
        ),
    });
    let proof = (mode != Mode::Semantic).then(|| prove_evocation(&xs, &q, &DefeaterSet::new(), &cfg.assignment));
    Ok(Modes { semantic, proof }.finish(cfg))
}

pub fn implies(xs: &str, q: &str, q2: &str, mode: Mode, cfg: &Config) -> Result<Outcome, CliError> {
    let xs = premises(xs)?;
    let q = question(q)?;
    let q2 = question(q2)?;
    let semantic = (mode != Mode::Proof).then(|| {
        let vs = implication_violations(&xs, &q, &q2);
        let Some(first) = vs.first() else {
            return (true, OK, Value::Null, String::new());
        };
        let code = match first {
            ImplicationViolation::Answered { .. } => DEFEATED,
            _ => NOT_DERIVABLE,
        };
        let detail: Vec<Value> = vs
            .iter()
            .map(|v| json!({ "clause": v.clause(), "reason": v.to_string() }))
            .collect();
        (false, code, Value::from(detail), format!(" ({first})"))
    });
    let proof = (mode != Mode::Semantic).then(|| prove_eimp(&xs, &q, &q2, &DefeaterSet::new(), &cfg.assignment));
    Ok(Modes { semantic, proof }.finish(cfg))
}

pub fn render_event(e: &Event, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(e).expect("events serialize") + "\n",
        Format::Text => {
            let kind = serde_json::to_value(e.event).expect("events serialize");
            format!("[{}] {}: {}\n", e.step, kind.as_str().unwrap_or_default(), e.detail)
        }
    }
}

pub fn agent(q: &str, facts: &str, stream: Option<&str>, cfg: &Config) -> Result<Outcome, CliError> {
    let q = question(q)?;
    let facts = premises(facts)?.into_iter().collect();
    let text = match stream {
        None => String::new(),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            s
        }
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?,
    };
    let log = run_agent(q, facts, cfg.assignment.clone(), cfg.exceptions.clone(), &text);
    Ok(Outcome {
        code: OK,
        text: log.iter().map(|e| render_event(e, cfg.format)).collect(),
    })
}
