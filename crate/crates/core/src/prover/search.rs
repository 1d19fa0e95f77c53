//! Bounded backward proof search over every rule except `Cut`.
//!
//! Every backward reading strictly shrinks the sequent, so the search space
//! is acyclic and failed sequents can be memoised unless a bound cut the
//! search short below them. Premises that are invalid or defeated are
//! pruned during enumeration: no proof contains them.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};

use super::{SearchBounds, Verdict};
use crate::calculus::{candidates_with, PremiseFilter, ProofTree, RuleId};
use crate::formula::SForm;
use crate::semantics::{declarativize, entails};
use crate::sequent::{DefeatCache, DefeaterAssignment, Sequent};

const RULE_ORDER: [RuleId; 21] = [
    RuleId::Ax1,
    RuleId::Ax2,
    RuleId::Ax3,
    RuleId::Ax4,
    RuleId::AndL,
    RuleId::OrR,
    RuleId::NegNegL,
    RuleId::NegNegR,
    RuleId::NegAndR,
    RuleId::NegOrL,
    RuleId::OrL,
    RuleId::NegAndL,
    RuleId::AndR,
    RuleId::NegOrR,
    RuleId::QR1,
    RuleId::QL1,
    RuleId::QR2,
    RuleId::QL2,
    RuleId::LW,
    RuleId::RW,
    RuleId::DE,
];

type Sides = (BTreeSet<SForm>, BTreeSet<SForm>);

#[derive(Default)]
struct Oracle {
    valid: RefCell<HashMap<Sides, bool>>,
    defeat: DefeatCache,
}

impl PremiseFilter for Oracle {
    fn sides(&self, antecedent: &BTreeSet<SForm>, succedent: &BTreeSet<SForm>) -> bool {
        let key = (antecedent.clone(), succedent.clone());
        if let Some(&v) = self.valid.borrow().get(&key) {
            return v;
        }
        let v = entails(&declarativize(antecedent), &declarativize(succedent));
        self.valid.borrow_mut().insert(key, v);
        v
    }

    fn premise(&self, premise: &Sequent) -> bool {
        !self.defeat.is_defeated(&premise.antecedent, &premise.defeaters)
    }
}

enum Outcome {
    Proved(ProofTree),
    /// `complete` is false when a bound pruned part of the search.
    Failed {
        complete: bool,
    },
    Exhausted,
}

/// A reusable prover. Proofs and complete failures are remembered across
/// calls with the same assignment and bounds.
pub struct GeneralProver<'a> {
    assignment: &'a DefeaterAssignment,
    bounds: SearchBounds,
    oracle: Oracle,
    proved: HashMap<Sequent, ProofTree>,
    failed: HashSet<Sequent>,
    nodes: usize,
    limit_hit: Option<String>,
}

impl<'a> GeneralProver<'a> {
    pub fn new(assignment: &'a DefeaterAssignment, bounds: SearchBounds) -> Self {
        GeneralProver {
            assignment,
            bounds,
            oracle: Oracle::default(),
            proved: HashMap::new(),
            failed: HashSet::new(),
            nodes: 0,
            limit_hit: None,
        }
    }

    pub fn bounds(&self) -> &SearchBounds {
        &self.bounds
    }

    pub fn prove(&mut self, s: &Sequent) -> Verdict {
        if let Some(m) = self.oracle.defeat.witness(&s.antecedent, &s.defeaters) {
            return Verdict::Defeated(m.clone());
        }
        if !self.oracle.sides(&s.antecedent, &s.succedent) {
            return Verdict::NotDerivable;
        }
        self.nodes = 0;
        self.limit_hit = None;
        match self.search(s, 0) {
            Outcome::Proved(t) => Verdict::Provable(t),
            Outcome::Failed { complete: true } => Verdict::NotDerivable,
            Outcome::Failed { complete: false } => Verdict::Unknown(
                self.limit_hit
                    .take()
                    .unwrap_or_else(|| format!("depth limit of {} reached", self.bounds.max_depth)),
            ),
            Outcome::Exhausted => Verdict::Unknown(format!("node budget of {} exhausted", self.bounds.max_nodes)),
        }
    }

    fn search(&mut self, s: &Sequent, depth: usize) -> Outcome {
        if let Some(t) = self.proved.get(s) {
            return Outcome::Proved(t.clone());
        }
        if self.failed.contains(s) {
            return Outcome::Failed { complete: true };
        }
        if depth >= self.bounds.max_depth {
            return Outcome::Failed { complete: false };
        }
        self.nodes += 1;
        if self.nodes > self.bounds.max_nodes {
            return Outcome::Exhausted;
        }
        let mut complete = true;
        for rule in RULE_ORDER {
            let candidates = match candidates_with(s, rule, self.assignment, &self.bounds, &self.oracle) {
                Ok(c) => c,
                Err(e) => {
                    complete = false;
                    self.limit_hit.get_or_insert_with(|| e.to_string());
                    continue;
                }
            };
            'candidates: for c in candidates {
                let mut premises = Vec::with_capacity(c.premises.len());
                for p in &c.premises {
                    match self.search(p, depth + 1) {
                        Outcome::Proved(t) => premises.push(t),
                        Outcome::Failed { complete: sub } => {
                            complete &= sub;
                            continue 'candidates;
                        }
                        Outcome::Exhausted => return Outcome::Exhausted,
                    }
                }
                let t = ProofTree {
                    sequent: s.clone(),
                    rule,
                    witness: c.witness,
                    premises,
                };
                self.proved.insert(s.clone(), t.clone());
                return Outcome::Proved(t);
            }
        }
        if complete {
            self.failed.insert(s.clone());
        }
        Outcome::Failed { complete }
    }
}

/// Decides `s` with a fresh [`GeneralProver`].
pub fn prove_general(s: &Sequent, assignment: &DefeaterAssignment, bounds: &SearchBounds) -> Verdict {
    GeneralProver::new(assignment, *bounds).prove(s)
}
