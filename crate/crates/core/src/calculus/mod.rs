//! Rule schemas, proof trees and the proof checker.
//!
//! [`check_instance`] validates a single inference against its schema;
//! [`check_tree`] classifies a whole tree as a proof, a paraproof (some node
//! is defeated) or no derivation at all. [`premise_candidates`] reads a rule
//! backwards and drives the generic proof search.

mod backward;
mod check;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse_dformula, DFormula};
use crate::sequent::Sequent;

pub(crate) use backward::{candidates_with, PremiseFilter};
pub use backward::{premise_candidates, BoundExceeded, Candidate};
pub(crate) use check::{binary_shape, unary_shape};
pub use check::{check_instance, check_tree, Checker, InstanceError, SchemaElement};

/// Inference rules. `Cut` is an extension: it is checked but never used by
/// the search.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    Ax1,
    Ax2,
    Ax3,
    Ax4,
    LW,
    RW,
    DE,
    AndL,
    AndR,
    OrL,
    OrR,
    NegNegL,
    NegNegR,
    NegAndL,
    NegAndR,
    NegOrL,
    NegOrR,
    QR1,
    QL1,
    QR2,
    QL2,
    Cut,
}

impl RuleId {
    pub const ALL: [RuleId; 22] = [
        RuleId::Ax1,
        RuleId::Ax2,
        RuleId::Ax3,
        RuleId::Ax4,
        RuleId::LW,
        RuleId::RW,
        RuleId::DE,
        RuleId::AndL,
        RuleId::AndR,
        RuleId::OrL,
        RuleId::OrR,
        RuleId::NegNegL,
        RuleId::NegNegR,
        RuleId::NegAndL,
        RuleId::NegAndR,
        RuleId::NegOrL,
        RuleId::NegOrR,
        RuleId::QR1,
        RuleId::QL1,
        RuleId::QR2,
        RuleId::QL2,
        RuleId::Cut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Ax1 => "Ax1",
            RuleId::Ax2 => "Ax2",
            RuleId::Ax3 => "Ax3",
            RuleId::Ax4 => "Ax4",
            RuleId::LW => "LW",
            RuleId::RW => "RW",
            RuleId::DE => "DE",
            RuleId::AndL => "AndL",
            RuleId::AndR => "AndR",
            RuleId::OrL => "OrL",
            RuleId::OrR => "OrR",
            RuleId::NegNegL => "NegNegL",
            RuleId::NegNegR => "NegNegR",
            RuleId::NegAndL => "NegAndL",
            RuleId::NegAndR => "NegAndR",
            RuleId::NegOrL => "NegOrL",
            RuleId::NegOrR => "NegOrR",
            RuleId::QR1 => "QR1",
            RuleId::QL1 => "QL1",
            RuleId::QR2 => "QR2",
            RuleId::QL2 => "QL2",
            RuleId::Cut => "Cut",
        }
    }

    pub fn is_axiom(self) -> bool {
        matches!(self, RuleId::Ax1 | RuleId::Ax2 | RuleId::Ax3 | RuleId::Ax4)
    }

    /// Rules outside the core calculus.
    pub fn is_extension(self) -> bool {
        self == RuleId::Cut
    }

    /// Rules with a principal question.
    pub fn is_erotetic(self) -> bool {
        matches!(self, RuleId::QR1 | RuleId::QL1 | RuleId::QR2 | RuleId::QL2)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule {0:?}")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// For the two-question rules: each implied answer mapped to the implying
/// answer it yields.
pub type Witness = BTreeMap<DFormula, DFormula>;

/// A rule-labelled tree of sequents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NodeRepr", into = "NodeRepr")]
pub struct ProofTree {
    pub sequent: Sequent,
    pub rule: RuleId,
    pub witness: Option<Witness>,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(sequent: Sequent, rule: RuleId) -> Self {
        ProofTree {
            sequent,
            rule,
            witness: None,
            premises: Vec::new(),
        }
    }

    pub fn node(sequent: Sequent, rule: RuleId, premises: Vec<ProofTree>) -> Self {
        ProofTree {
            sequent,
            rule,
            witness: None,
            premises,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    /// The node at `path`, a list of premise indices from the root.
    pub fn get(&self, path: &[usize]) -> Option<&ProofTree> {
        path.iter().try_fold(self, |t, &i| t.premises.get(i))
    }

    /// All nodes in pre-order with their paths.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &ProofTree)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, t)) = stack.pop() {
            for (i, p) in t.premises.iter().enumerate().rev() {
                let mut child = path.clone();
                child.push(i);
                stack.push((child, p));
            }
            out.push((path, t));
        }
        out
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&ProofTree> {
        self.nodes()
            .into_iter()
            .map(|(_, t)| t)
            .filter(|t| t.premises.is_empty())
            .collect()
    }

    /// An indented, human-readable rendering, root first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let _ = write!(out, "{:width$}{}  {}", "", self.rule, self.sequent, width = depth * 2);
        if let Some(w) = &self.witness {
            let pairs: Vec<String> = w.iter().map(|(b, a)| format!("{b} => {a}")).collect();
            let _ = write!(out, "  ({})", pairs.join("; "));
        }
        out.push('\n');
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proof trees always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Formats a node path as `root`, `root.0.1`, ...
pub fn format_path(path: &[usize]) -> String {
    let mut s = String::from("root");
    for i in path {
        s.push('.');
        s.push_str(&i.to_string());
    }
    s
}

#[derive(Serialize, Deserialize)]
struct NodeRepr {
    sequent: Sequent,
    rule: RuleId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<BTreeMap<String, String>>,
    #[serde(default)]
    premises: Vec<ProofTree>,
}

impl From<ProofTree> for NodeRepr {
    fn from(t: ProofTree) -> Self {
        NodeRepr {
            sequent: t.sequent,
            rule: t.rule,
            witness: t
                .witness
                .map(|w| w.iter().map(|(b, a)| (b.to_string(), a.to_string())).collect()),
            premises: t.premises,
        }
    }
}

impl TryFrom<NodeRepr> for ProofTree {
    type Error = String;

    fn try_from(n: NodeRepr) -> Result<Self, Self::Error> {
        let witness = match n.witness {
            None => None,
            Some(w) => {
                let mut out = Witness::new();
                for (b, a) in w {
                    let b = parse_dformula(&b).map_err(|e| format!("witness key {b:?}: {e}"))?;
                    let a = parse_dformula(&a).map_err(|e| format!("witness value {a:?}: {e}"))?;
                    out.insert(b, a);
                }
                Some(out)
            }
        };
        Ok(ProofTree {
            sequent: n.sequent,
            rule: n.rule,
            witness,
            premises: n.premises,
        })
    }
}

/// Outcome of checking a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Some inference is not an instance of its rule.
    NotADerivation { path: Vec<usize>, reason: InstanceError },
    /// A derivation with defeated nodes, listed in pre-order.
    Paraproof { defeated: Vec<Vec<usize>> },
    /// A derivation whose every node is undefeated.
    Proof,
}

impl Classification {
    pub fn is_proof(&self) -> bool {
        *self == Classification::Proof
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::NotADerivation { .. } => "not-a-derivation",
            Classification::Paraproof { .. } => "paraproof",
            Classification::Proof => "proof",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::NotADerivation { path, reason } => {
                write!(f, "not-a-derivation at {}: {reason}", format_path(path))
            }
            Classification::Paraproof { defeated } => {
                let paths: Vec<String> = defeated.iter().map(|p| format_path(p)).collect();
                write!(f, "paraproof; defeated nodes: {}", paths.join(", "))
            }
            Classification::Proof => f.write_str("proof"),
        }
    }
}
