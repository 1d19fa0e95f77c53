//! Looking for subquestions worth asking, and the agent loop that feeds
//! facts into the resulting sequents until they are defeated.
//!
//! A candidate subquestion is `?{C, ~C}` where `C` is a subformula of the
//! facts, with one leading negation stripped, that is not a subformula of
//! any answer of the principal question. It is admitted when the facts and
//! the principal question strongly regularly imply it and the sequent
//!
//! ```text
//! Q, X |- [S ∪ answers of Q] ?{C, ~C}
//! ```
//!
//! is provable. `S` holds the assigned defeaters of every atom of both
//! questions plus any user-supplied members.

mod agent;

use std::collections::BTreeSet;

use crate::calculus::ProofTree;
use crate::formula::{DFormula, Question, SForm};
use crate::prover::{prove_eimp, Verdict};
use crate::semantics::implies_sr;
use crate::sequent::{DefeaterAssignment, DefeaterSet, Sequent};

pub use agent::{
    agent_step, run_agent, ActiveSequent, AgentState, AgentStatus, DefeatKind, DefeatReport, Event, EventKind,
};

/// A subquestion together with the proved sequent that licenses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquestion {
    pub question: Question,
    pub sequent: Sequent,
    pub proof: ProofTree,
}

/// Bodies `C` of the candidate questions `?{C, ~C}`, in canonical order.
pub fn candidate_bodies(principal: &Question, facts: &BTreeSet<DFormula>) -> BTreeSet<DFormula> {
    let in_answers: BTreeSet<DFormula> = principal.answers().iter().flat_map(DFormula::subformulas).collect();
    let answers = principal.answers();
    facts
        .iter()
        .flat_map(DFormula::subformulas)
        .filter(|a| !in_answers.contains(a))
        .map(|a| match a {
            DFormula::Neg(inner) => *inner,
            other => other,
        })
        .filter(|c| !answers.contains(c) && !answers.contains(&c.clone().neg()))
        .collect()
}

/// The defeater set attached to the sequent licensing `subquestion`.
pub fn strategy_defeaters(
    principal: &Question,
    subquestion: &Question,
    assignment: &DefeaterAssignment,
    extra: &DefeaterSet,
) -> DefeaterSet {
    let mut out = extra.clone();
    for atom in principal.atoms().union(&subquestion.atoms()) {
        out = out.union(assignment.get(atom));
    }
    out.union(&DefeaterSet::answer_singletons(principal))
}

/// Every admitted subquestion, sorted by printed form.
pub fn find_subquestions(
    principal: &Question,
    facts: &BTreeSet<DFormula>,
    assignment: &DefeaterAssignment,
    extra: &DefeaterSet,
) -> Vec<Subquestion> {
    let xs: Vec<DFormula> = facts.iter().cloned().collect();
    let mut out: Vec<Subquestion> = candidate_bodies(principal, facts)
        .into_iter()
        .map(Question::yes_no)
        .filter(|q2| implies_sr(&xs, principal, q2))
        .filter_map(|q2| {
            let members = strategy_defeaters(principal, &q2, assignment, extra);
            match prove_eimp(&xs, principal, &q2, &members, assignment) {
                Verdict::Provable(proof) => Some(Subquestion {
                    sequent: proof.sequent.clone(),
                    question: q2,
                    proof,
                }),
                _ => None,
            }
        })
        .collect();
    out.sort_by_cached_key(|s| s.question.to_string());
    out
}

/// Sequent with `fact` weakened into the antecedent, and its proof.
pub(crate) fn weaken_in(seq: &Sequent, proof: &ProofTree, fact: &DFormula) -> (Sequent, ProofTree) {
    let f = SForm::D(fact.clone());
    if seq.antecedent.contains(&f) {
        return (seq.clone(), proof.clone());
    }
    let mut s = seq.clone();
    s.antecedent.insert(f);
    (
        s.clone(),
        ProofTree::node(s, crate::calculus::RuleId::LW, vec![proof.clone()]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_tree, Classification};
    use crate::formula::parse_dformula;
    use crate::sequent::parse_sequent;

    fn facts(fs: &[&str]) -> BTreeSet<DFormula> {
        fs.iter().map(|f| parse_dformula(f).unwrap()).collect()
    }

    fn example() -> (Question, BTreeSet<DFormula>, DefeaterAssignment) {
        (
            "?{p, q}".parse().unwrap(),
            facts(&["~s | p", "s | q"]),
            "s : {r}\np : {t}\nq : {u, v}".parse().unwrap(),
        )
    }

    #[test]
    fn worked_example_has_one_subquestion() {
        let (q, x, a) = example();
        let found = find_subquestions(&q, &x, &a, &DefeaterSet::new());
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].question.to_string(), "?{s, ~s}");
        assert_eq!(
            found[0].sequent,
            parse_sequent("?{p, q}, ~s | p, s | q |- [{r}, {t}, {u, v}, {p}, {q}] ?{s, ~s}").unwrap()
        );
        assert_eq!(check_tree(&found[0].proof, &a), Classification::Proof);
    }

    #[test]
    fn candidates_strip_one_negation() {
        let (q, x, _) = example();
        let mut bodies: Vec<String> = candidate_bodies(&q, &x).iter().map(|c| c.to_string()).collect();
        bodies.sort();
        assert_eq!(bodies, ["s", "s | q", "~s | p"]);
    }

    #[test]
    fn nothing_to_ask() {
        let (q, _, a) = example();
        assert!(find_subquestions(&q, &BTreeSet::new(), &a, &DefeaterSet::new()).is_empty());
        assert!(find_subquestions(&q, &facts(&["p"]), &a, &DefeaterSet::new()).is_empty());
    }

    #[test]
    fn extra_members_are_attached() {
        let (q, x, a) = example();
        let extra: DefeaterSet = "[{w}]".parse().unwrap();
        let found = find_subquestions(&q, &x, &a, &extra);
        assert!(found[0]
            .sequent
            .defeaters
            .contains(&crate::sequent::DefeaterMember::singleton(DFormula::atom("w"))));
    }
}
