//! Classical two-valued semantics and the semantic erotetic relations.
//!
//! Entailment between finite sets is decided by truth tables when at most
//! [`TRUTH_TABLE_LIMIT`] atoms occur, and by a CNF/DPLL procedure otherwise.

mod dpll;
mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, DFormula, Question, SForm};

pub use dpll::entails_dpll;
pub use table::{entails_truth_table, TRUTH_TABLE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("valuation has no value for atom {0}")]
    MissingAtom(Atom),
}

/// An assignment of truth values to atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation(BTreeMap<Atom, bool>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: Atom, value: bool) -> &mut Self {
        self.0.insert(atom, value);
        self
    }

    pub fn get(&self, atom: &Atom) -> Option<bool> {
        self.0.get(atom).copied()
    }
}

impl FromIterator<(Atom, bool)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (Atom, bool)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

pub fn eval(f: &DFormula, v: &Valuation) -> Result<bool, SemanticsError> {
    Ok(match f {
        DFormula::Atom(a) => v.get(a).ok_or_else(|| SemanticsError::MissingAtom(a.clone()))?,
        DFormula::Neg(a) => !eval(a, v)?,
        DFormula::And(a, b) => eval(a, v)? && eval(b, v)?,
        DFormula::Or(a, b) => eval(a, v)? || eval(b, v)?,
    })
}

/// Whether every valuation satisfying all of `xs` satisfies some member of
/// `ys`. With `ys` empty this is unsatisfiability of `xs`.
pub fn entails<'a, X, Y>(xs: X, ys: Y) -> bool
where
    X: IntoIterator<Item = &'a DFormula>,
    Y: IntoIterator<Item = &'a DFormula>,
{
    let xs: Vec<&DFormula> = xs.into_iter().collect();
    let ys: Vec<&DFormula> = ys.into_iter().collect();
    match entails_truth_table(xs.iter().copied(), ys.iter().copied()) {
        Some(b) => b,
        None => entails_dpll(xs, ys),
    }
}

/// Replaces every question by the disjunction of its answers.
pub fn declarativize<'a, I: IntoIterator<Item = &'a SForm>>(g: I) -> BTreeSet<DFormula> {
    g.into_iter().map(SForm::declarativize).collect()
}

/// Why a set of formulas fails to evoke a question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvocationFailure {
    /// The formulas do not guarantee that some answer is true.
    Unsound,
    /// The formulas already entail this answer.
    Answered(DFormula),
}

impl fmt::Display for EvocationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvocationFailure::Unsound => f.write_str("no answer is guaranteed to be true"),
            EvocationFailure::Answered(a) => write!(f, "answer {a} is already entailed"),
        }
    }
}

/// Checks evocation, reporting the first failing condition. Soundness is
/// checked before the answers.
pub fn evocation_check<'a, X>(xs: X, q: &Question) -> Result<(), EvocationFailure>
where
    X: IntoIterator<Item = &'a DFormula>,
{
    let xs: Vec<&DFormula> = xs.into_iter().collect();
    if !entails(xs.iter().copied(), q.answers()) {
        return Err(EvocationFailure::Unsound);
    }
    match q.answers().iter().find(|a| entails(xs.iter().copied(), [*a])) {
        Some(a) => Err(EvocationFailure::Answered(a.clone())),
        None => Ok(()),
    }
}

pub fn evokes<'a, X>(xs: X, q: &Question) -> bool
where
    X: IntoIterator<Item = &'a DFormula>,
{
    evocation_check(xs, q).is_ok()
}

/// A failed clause of strong regular erotetic implication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImplicationViolation {
    /// Clause (i): with this implying answer added, no implied answer is
    /// guaranteed.
    OpenAnswer { answer: DFormula },
    /// Clause (ii): this implied answer, together with the formulas, yields
    /// no implying answer.
    NoImplyingAnswer { implied: DFormula },
    /// Clause (iii): the formulas already entail this implying answer.
    Answered { answer: DFormula },
}

impl ImplicationViolation {
    /// The clause label: `"i"`, `"ii"` or `"iii"`.
    pub fn clause(&self) -> &'static str {
        match self {
            ImplicationViolation::OpenAnswer { .. } => "i",
            ImplicationViolation::NoImplyingAnswer { .. } => "ii",
            ImplicationViolation::Answered { .. } => "iii",
        }
    }
}

impl fmt::Display for ImplicationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImplicationViolation::OpenAnswer { answer } => {
                write!(f, "clause (i): with {answer} no implied answer is guaranteed")
            }
            ImplicationViolation::NoImplyingAnswer { implied } => {
                write!(f, "clause (ii): {implied} yields no implying answer")
            }
            ImplicationViolation::Answered { answer } => {
                write!(f, "clause (iii): {answer} is already entailed")
            }
        }
    }
}

/// The first implying answer `a` (in canonical order) with `xs, b ⊨ a`.
pub fn implying_answer<'q, 'a, X>(xs: X, q: &'q Question, b: &DFormula) -> Option<&'q DFormula>
where
    X: IntoIterator<Item = &'a DFormula>,
{
    let mut with_b: Vec<&DFormula> = xs.into_iter().collect();
    with_b.push(b);
    q.answers().iter().find(|a| entails(with_b.iter().copied(), [*a]))
}

/// Every violated clause of strong regular erotetic implication of `q2` by
/// `q` given `xs`, in clause order.
pub fn implication_violations<'a, X>(xs: X, q: &Question, q2: &Question) -> Vec<ImplicationViolation>
where
    X: IntoIterator<Item = &'a DFormula>,
{
    let xs: Vec<&DFormula> = xs.into_iter().collect();
    let mut out = Vec::new();
    for a in q.answers() {
        let with_a = xs.iter().copied().chain([a]);
        if !entails(with_a, q2.answers()) {
            out.push(ImplicationViolation::OpenAnswer { answer: a.clone() });
        }
    }
    for b in q2.answers() {
        if implying_answer(xs.iter().copied(), q, b).is_none() {
            out.push(ImplicationViolation::NoImplyingAnswer { implied: b.clone() });
        }
    }
    for a in q.answers() {
        if entails(xs.iter().copied(), [a]) {
            out.push(ImplicationViolation::Answered { answer: a.clone() });
        }
    }
    out
}

pub fn implies_sr<'a, X>(xs: X, q: &Question, q2: &Question) -> bool
where
    X: IntoIterator<Item = &'a DFormula>,
{
    implication_violations(xs, q, q2).is_empty()
}
