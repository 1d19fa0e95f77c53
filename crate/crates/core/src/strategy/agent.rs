//! The inquiry loop: facts are weakened into every active sequent until it
//! is defeated, either because the principal question got answered or
//! because an exception showed up.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{find_subquestions, weaken_in, Subquestion};
use crate::calculus::ProofTree;
use crate::formula::{parse_dformula, DFormula, Question};
use crate::semantics::{declarativize, entails};
use crate::sequent::{DefeaterAssignment, DefeaterMember, DefeaterSet, Sequent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSequent {
    pub subquestion: Question,
    pub sequent: Sequent,
    pub proof: ProofTree,
    /// Set once the facts entail an answer of the subquestion.
    pub resolved: Option<DFormula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefeatKind {
    /// The facts entail this answer of the principal question.
    Answered(DFormula),
    Exception(DefeaterMember),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefeatReport {
    /// Position in the active list before the step.
    pub index: usize,
    pub witness: DefeaterMember,
    pub kind: DefeatKind,
}

impl fmt::Display for DefeatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DefeatKind::Answered(a) => write!(f, "sequent {} defeated: answered {a}", self.index),
            DefeatKind::Exception(m) => write!(f, "sequent {} defeated: exception {m}", self.index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    SubquestionRaised,
    FactIngested,
    SubquestionResolved,
    Answered,
    Exception,
    ParseError,
    Status,
}

/// One transcript line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub event: EventKind,
    pub detail: String,
    /// Facts ingested so far.
    pub step: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentStatus {
    Answered,
    AwaitingFacts,
    NoSubquestions,
}

impl AgentStatus {
    pub fn label(self) -> &'static str {
        match self {
            AgentStatus::Answered => "answered",
            AgentStatus::AwaitingFacts => "awaiting-facts",
            AgentStatus::NoSubquestions => "no-subquestions",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AgentState {
    pub principal: Question,
    pub facts: BTreeSet<DFormula>,
    pub assignment: DefeaterAssignment,
    /// User-supplied exception members attached to every sequent.
    pub extra: DefeaterSet,
    pub active: Vec<ActiveSequent>,
    pub log: Vec<Event>,
    pub answer: Option<DFormula>,
    steps: usize,
}

impl AgentState {
    /// Starts an agent and raises the initial subquestions.
    pub fn new(
        principal: Question,
        facts: BTreeSet<DFormula>,
        assignment: DefeaterAssignment,
        extra: DefeaterSet,
    ) -> Self {
        let mut state = AgentState {
            principal,
            facts,
            assignment,
            extra,
            active: Vec::new(),
            log: Vec::new(),
            answer: None,
            steps: 0,
        };
        state.raise();
        state
    }

    fn emit(&mut self, event: EventKind, detail: impl Into<String>) {
        self.log.push(Event {
            event,
            detail: detail.into(),
            step: self.steps,
        });
    }

    fn raise(&mut self) {
        for Subquestion {
            question,
            sequent,
            proof,
        } in find_subquestions(&self.principal, &self.facts, &self.assignment, &self.extra)
        {
            self.emit(EventKind::SubquestionRaised, sequent.to_string());
            self.active.push(ActiveSequent {
                subquestion: question,
                sequent,
                proof,
                resolved: None,
            });
        }
    }

    pub fn status(&self) -> AgentStatus {
        if self.answer.is_some() {
            AgentStatus::Answered
        } else if self.active.is_empty() {
            AgentStatus::NoSubquestions
        } else {
            AgentStatus::AwaitingFacts
        }
    }

    /// Ingests one stream line. Blank lines and `#` comments are skipped;
    /// an unparsable line is logged and otherwise ignored. Once every active
    /// sequent is gone without an answer, subquestions are looked for again.
    pub fn ingest_line(&mut self, line_no: usize, text: &str) -> Vec<DefeatReport> {
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            return Vec::new();
        }
        match parse_dformula(text) {
            Ok(fact) => {
                let had_active = !self.active.is_empty();
                let reports = agent_step(self, fact);
                if had_active && self.active.is_empty() && self.answer.is_none() {
                    self.raise();
                }
                reports
            }
            Err(e) => {
                self.emit(EventKind::ParseError, format!("line {line_no}: {e}"));
                Vec::new()
            }
        }
    }

    /// Appends the final status event.
    pub fn finish(&mut self) {
        let label = self.status().label();
        self.emit(EventKind::Status, label);
    }
}

/// Adds `fact` to the facts and to every active sequent. Sequents that
/// become defeated are dropped and reported.
pub fn agent_step(state: &mut AgentState, fact: DFormula) -> Vec<DefeatReport> {
    state.steps += 1;
    state.facts.insert(fact.clone());
    state.emit(EventKind::FactIngested, fact.to_string());
    let principal_answers = DefeaterSet::answer_singletons(&state.principal);

    let mut reports = Vec::new();
    let mut kept = Vec::new();
    for (index, mut a) in std::mem::take(&mut state.active).into_iter().enumerate() {
        let (sequent, proof) = weaken_in(&a.sequent, &a.proof, &fact);
        a.sequent = sequent;
        a.proof = proof;
        let ant = declarativize(&a.sequent.antecedent);
        if a.resolved.is_none() {
            if let Some(b) = a.subquestion.answers().iter().find(|b| entails(&ant, [*b])) {
                a.resolved = Some(b.clone());
                state.emit(
                    EventKind::SubquestionResolved,
                    format!("{} answered by {b}", a.subquestion),
                );
            }
        }
        let firing: Vec<&DefeaterMember> = a
            .sequent
            .defeaters
            .iter()
            .filter(|m| entails(&ant, m.formulas()))
            .collect();
        let witness = firing
            .iter()
            .find(|m| principal_answers.contains(m))
            .or(firing.first())
            .map(|m| (*m).clone());
        let Some(witness) = witness else {
            kept.push(a);
            continue;
        };
        let kind = if principal_answers.contains(&witness) {
            let answer = witness.as_singleton().expect("answer members are singletons").clone();
            state.answer.get_or_insert(answer.clone());
            state.emit(EventKind::Answered, format!("{} by {answer}", state.principal));
            DefeatKind::Answered(answer)
        } else {
            state.emit(EventKind::Exception, format!("{} defeated by {witness}", a.sequent));
            DefeatKind::Exception(witness.clone())
        };
        reports.push(DefeatReport { index, witness, kind });
    }
    state.active = kept;
    reports
}

/// Runs an agent over a newline-separated fact stream, stopping early once
/// the principal question is answered.
pub fn run_agent(
    principal: Question,
    facts: BTreeSet<DFormula>,
    assignment: DefeaterAssignment,
    extra: DefeaterSet,
    stream: &str,
) -> Vec<Event> {
    let mut state = AgentState::new(principal, facts, assignment, extra);
    for (i, line) in stream.lines().enumerate() {
        if state.answer.is_some() {
            break;
        }
        state.ingest_line(i + 1, line);
    }
    state.finish();
    state.log
}
