//! Deciding sequents and building proofs.
//!
//! Three shapes of sequent get direct constructions:
//!
//! * declarative sequents ([`prove_declarative`]),
//! * `X |- [S] Q` with `S` containing the answer singletons of `Q`
//!   ([`prove_evocation`]),
//! * `X, Q |- [S] Q2` with `S` containing the answer singletons of `Q`
//!   ([`prove_eimp`]).
//!
//! Everything else goes to the bounded backward search [`prove_general`].
//! [`prove`] dispatches on [`decide_shape`].

mod construct;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::calculus::ProofTree;
use crate::formula::{DFormula, Question, SForm};
use crate::sequent::{DefeaterAssignment, DefeaterMember, DefeaterSet, Sequent};

pub use construct::{derive_declarative, prove_declarative, prove_eimp, prove_evocation};
pub use search::{prove_general, GeneralProver};

/// Result of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Provable(ProofTree),
    /// The sequent is defeated by this member; no proof can exist.
    Defeated(DefeaterMember),
    NotDerivable,
    /// A search bound was hit before a decision.
    Unknown(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Provable(_) => "provable",
            Verdict::Defeated(_) => "defeated",
            Verdict::NotDerivable => "not-derivable",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn is_provable(&self) -> bool {
        matches!(self, Verdict::Provable(_))
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            Verdict::Provable(t) => Some(t),
            _ => None,
        }
    }

    /// Drops the tree, keeping the verdict kind and witness.
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Provable(_) => VerdictKind::Provable,
            Verdict::Defeated(m) => VerdictKind::Defeated(m.clone()),
            Verdict::NotDerivable => VerdictKind::NotDerivable,
            Verdict::Unknown(_) => VerdictKind::Unknown,
        }
    }

    /// `{"verdict", "witness"?, "proof"?}`; the witness is the list of the
    /// member's formulas.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "verdict": self.label() });
        match self {
            Verdict::Provable(t) => {
                v["proof"] = serde_json::to_value(t).expect("proof trees serialize");
            }
            Verdict::Defeated(m) => {
                v["witness"] = m.formulas().iter().map(|f| f.to_string()).collect();
            }
            Verdict::Unknown(reason) => {
                v["reason"] = Value::from(reason.as_str());
            }
            Verdict::NotDerivable => {}
        }
        v
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Defeated(m) => write!(f, "defeated by {m}"),
            Verdict::Unknown(r) => write!(f, "unknown ({r})"),
            other => f.write_str(other.label()),
        }
    }
}

/// A verdict without its proof, for comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictKind {
    Provable,
    Defeated(DefeaterMember),
    NotDerivable,
    Unknown,
}

/// Limits on the generic backward search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchBounds {
    /// Sequents expanded per call.
    pub max_nodes: usize,
    /// Ways to distribute context formulas over the premises of one rule.
    pub max_context_split: usize,
    /// Defeater subsets for DE, and defeater distributions for one rule.
    pub max_defeater_subsets: usize,
    /// Branch length.
    pub max_depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_nodes: 200_000,
            max_context_split: 4096,
            max_defeater_subsets: 1024,
            max_depth: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search bound {name} must be positive")]
pub struct InvalidBounds {
    pub name: &'static str,
}

impl SearchBounds {
    pub fn validate(&self) -> Result<(), InvalidBounds> {
        for (name, v) in [
            ("max_nodes", self.max_nodes),
            ("max_context_split", self.max_context_split),
            ("max_defeater_subsets", self.max_defeater_subsets),
            ("max_depth", self.max_depth),
        ] {
            if v == 0 {
                return Err(InvalidBounds { name });
            }
        }
        Ok(())
    }
}

/// Syntactic class of a sequent, used for dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Declarative,
    /// `X |- [S] Q`, `X` declarative, `S` containing the answer singletons.
    Evocation {
        premises: Vec<DFormula>,
        question: Question,
    },
    /// `X, Q |- [S] Q2`, `X` declarative, `S` containing the answer
    /// singletons of `Q`.
    Implication {
        premises: Vec<DFormula>,
        implying: Question,
        implied: Question,
    },
    Other,
}

impl Shape {
    pub fn label(&self) -> &'static str {
        match self {
            Shape::Declarative => "declarative",
            Shape::Evocation { .. } => "evocation-shaped",
            Shape::Implication { .. } => "eimp-shaped",
            Shape::Other => "other",
        }
    }
}

pub fn decide_shape(s: &Sequent) -> Shape {
    if s.is_declarative() {
        return Shape::Declarative;
    }
    let single_question = match (s.succedent.len(), s.succedent.iter().next()) {
        (1, Some(SForm::Q(q))) => q,
        _ => return Shape::Other,
    };
    let premises: Vec<DFormula> = s
        .antecedent
        .iter()
        .filter_map(|f| f.as_declarative().cloned())
        .collect();
    let asked: Vec<&Question> = s.antecedent.iter().filter_map(SForm::as_question).collect();
    let covers = |q: &Question| DefeaterSet::answer_singletons(q).is_subset(&s.defeaters);
    match asked.as_slice() {
        [] if covers(single_question) => Shape::Evocation {
            premises,
            question: single_question.clone(),
        },
        [q] if covers(q) => Shape::Implication {
            premises,
            implying: (*q).clone(),
            implied: single_question.clone(),
        },
        _ => Shape::Other,
    }
}

/// Decides any sequent, using the direct constructions where the shape
/// allows and the bounded search otherwise.
pub fn prove(s: &Sequent, assignment: &DefeaterAssignment, bounds: &SearchBounds) -> Verdict {
    match decide_shape(s) {
        Shape::Declarative => prove_declarative(s, assignment).expect("shape is declarative"),
        Shape::Evocation { premises, question } => prove_evocation(&premises, &question, &s.defeaters, assignment),
        Shape::Implication {
            premises,
            implying,
            implied,
        } => prove_eimp(&premises, &implying, &implied, &s.defeaters, assignment),
        Shape::Other => prove_general(s, assignment, bounds),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the sequent contains a question")]
pub struct NotDeclarative;
