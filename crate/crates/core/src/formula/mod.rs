//! Declarative formulas, questions, and their concrete syntax.
//!
//! A [`DFormula`] is a propositional formula built from atoms with `~`, `&`
//! and `|`. A [`Question`] is a finite list of at least two distinct
//! declarative answers. [`SForm`] is either of the two.

mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

pub use parse::ParseError;
pub(crate) use parse::{Parser, Token};

/// Errors raised when a formula or question is assembled from parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("invalid atom name {0:?}: expected [a-z][a-z0-9_]*")]
    InvalidAtom(String),
    #[error("a question needs at least two answers, found {0}")]
    TooFewAnswers(usize),
    #[error("equiform answers: {0} occurs twice")]
    EquiformAnswers(String),
}

/// A propositional variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self, FormulaError> {
        if is_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(FormulaError::InvalidAtom(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A declarative formula.
///
/// Equality is structural, so two formulas are equal exactly when they are
/// equiform. `p | q` and `q | p` are different formulas.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DFormula {
    Atom(Atom),
    Neg(Box<DFormula>),
    And(Box<DFormula>, Box<DFormula>),
    Or(Box<DFormula>, Box<DFormula>),
}

impl DFormula {
    /// Builds an atom.
    ///
    /// # Panics
    ///
    /// Panics if `name` is not a valid atom name. Use [`Atom::new`] to
    /// validate untrusted input.
    pub fn atom(name: &str) -> Self {
        match Atom::new(name) {
            Ok(a) => DFormula::Atom(a),
            Err(e) => panic!("{e}"),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        DFormula::Neg(Box::new(self))
    }

    pub fn and(self, rhs: DFormula) -> Self {
        DFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: DFormula) -> Self {
        DFormula::Or(Box::new(self), Box::new(rhs))
    }

    /// Left-nested disjunction of `parts`, or `None` if `parts` is empty.
    pub fn disjunction<I: IntoIterator<Item = DFormula>>(parts: I) -> Option<DFormula> {
        parts.into_iter().reduce(DFormula::or)
    }

    /// True for atoms and negated atoms.
    pub fn is_literal(&self) -> bool {
        match self {
            DFormula::Atom(_) => true,
            DFormula::Neg(inner) => matches!(**inner, DFormula::Atom(_)),
            _ => false,
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            DFormula::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Nesting depth of connectives; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            DFormula::Atom(_) => 0,
            DFormula::Neg(a) => 1 + a.depth(),
            DFormula::And(a, b) | DFormula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// The formula together with all its proper subformulas.
    pub fn subformulas(&self) -> BTreeSet<DFormula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<DFormula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            DFormula::Atom(_) => {}
            DFormula::Neg(a) => a.collect_subformulas(out),
            DFormula::And(a, b) | DFormula::Or(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            DFormula::Atom(a) => {
                if !out.contains(a) {
                    out.insert(a.clone());
                }
            }
            DFormula::Neg(a) => a.collect_atoms(out),
            DFormula::And(a, b) | DFormula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Printing with every binary subterm parenthesized, which makes the
    /// parser's grouping visible: `p | q & r` becomes `p | (q & r)`.
    pub fn grouped(&self) -> String {
        let mut s = String::new();
        write_grouped(self, &mut s, true);
        s
    }

    fn precedence(&self) -> u8 {
        match self {
            DFormula::Or(..) => 1,
            DFormula::And(..) => 2,
            DFormula::Neg(_) | DFormula::Atom(_) => 3,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            DFormula::Atom(a) => f.write_str(a.as_str())?,
            DFormula::Neg(a) => {
                f.write_str("~")?;
                a.write_prec(f, 3)?;
            }
            // Left associative: the right operand binds one level tighter.
            DFormula::And(a, b) => {
                a.write_prec(f, 2)?;
                f.write_str(" & ")?;
                b.write_prec(f, 3)?;
            }
            DFormula::Or(a, b) => {
                a.write_prec(f, 1)?;
                f.write_str(" | ")?;
                b.write_prec(f, 2)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_grouped(d: &DFormula, out: &mut String, top: bool) {
    match d {
        DFormula::Atom(a) => out.push_str(a.as_str()),
        DFormula::Neg(a) => {
            out.push('~');
            write_grouped(a, out, false);
        }
        DFormula::And(a, b) | DFormula::Or(a, b) => {
            if !top {
                out.push('(');
            }
            write_grouped(a, out, false);
            out.push_str(if matches!(d, DFormula::And(..)) { " & " } else { " | " });
            write_grouped(b, out, false);
            if !top {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for DFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl fmt::Debug for DFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for DFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dformula(s)
    }
}

/// A question `?{A1, ..., An}`.
///
/// Answers are kept sorted by their printed form, so `?{q, p}` and `?{p, q}`
/// denote the same question.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Question {
    answers: Vec<DFormula>,
}

impl Question {
    pub fn new(answers: Vec<DFormula>) -> Result<Self, FormulaError> {
        if answers.len() < 2 {
            return Err(FormulaError::TooFewAnswers(answers.len()));
        }
        let mut keyed: Vec<(String, DFormula)> = answers.into_iter().map(|a| (a.to_string(), a)).collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
        for w in keyed.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(FormulaError::EquiformAnswers(w[0].0.clone()));
            }
        }
        Ok(Question {
            answers: keyed.into_iter().map(|(_, a)| a).collect(),
        })
    }

    /// The yes/no question `?{a, ~a}`.
    pub fn yes_no(a: DFormula) -> Self {
        let n = a.clone().neg();
        Question::new(vec![a, n]).expect("a formula and its negation are never equiform")
    }

    /// The direct answers, in canonical order.
    pub fn answers(&self) -> &[DFormula] {
        &self.answers
    }

    /// Left-nested disjunction of the answers.
    pub fn disjunction(&self) -> DFormula {
        DFormula::disjunction(self.answers.iter().cloned()).expect("questions have answers")
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for a in &self.answers {
            a.collect_atoms(&mut out);
        }
        out
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("?{")?;
        for (i, a) in self.answers.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Question {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_sform(s)? {
            SForm::Q(q) => Ok(q),
            SForm::D(_) => Err(ParseError::new(0, "expected a question")),
        }
    }
}

/// A formula of either kind.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SForm {
    D(DFormula),
    Q(Question),
}

impl SForm {
    pub fn as_declarative(&self) -> Option<&DFormula> {
        match self {
            SForm::D(d) => Some(d),
            SForm::Q(_) => None,
        }
    }

    pub fn as_question(&self) -> Option<&Question> {
        match self {
            SForm::Q(q) => Some(q),
            SForm::D(_) => None,
        }
    }

    pub fn is_question(&self) -> bool {
        matches!(self, SForm::Q(_))
    }

    /// The declarative content: the formula itself, or a question's
    /// disjunction of answers.
    pub fn declarativize(&self) -> DFormula {
        match self {
            SForm::D(d) => d.clone(),
            SForm::Q(q) => q.disjunction(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        match self {
            SForm::D(d) => d.atoms(),
            SForm::Q(q) => q.atoms(),
        }
    }
}

impl From<DFormula> for SForm {
    fn from(d: DFormula) -> Self {
        SForm::D(d)
    }
}

impl From<Question> for SForm {
    fn from(q: Question) -> Self {
        SForm::Q(q)
    }
}

impl fmt::Display for SForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SForm::D(d) => d.fmt(f),
            SForm::Q(q) => q.fmt(f),
        }
    }
}

impl fmt::Debug for SForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for SForm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sform(s)
    }
}

/// Parses a declarative formula. Question syntax is rejected.
pub fn parse_dformula(text: &str) -> Result<DFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let d = p.dformula()?;
    p.expect_end()?;
    Ok(d)
}

/// Parses a declarative formula or a question.
pub fn parse_sform(text: &str) -> Result<SForm, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.sform()?;
    p.expect_end()?;
    Ok(s)
}

/// Parses a comma-separated list of declarative formulas. Blank input is
/// the empty list.
pub fn parse_dformula_list(text: &str) -> Result<Vec<DFormula>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        out.push(p.dformula()?);
        if !p.eat(&Token::Comma) {
            break;
        }
    }
    p.expect_end()?;
    Ok(out)
}

/// Syntactic identity.
pub fn equiform(a: &SForm, b: &SForm) -> bool {
    a == b
}

pub fn direct_answers(q: &Question) -> &[DFormula] {
    q.answers()
}

/// Atoms occurring anywhere in `forms`.
pub fn atoms<'a, I: IntoIterator<Item = &'a SForm>>(forms: I) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    for f in forms {
        match f {
            SForm::D(d) => d.collect_atoms(&mut out),
            SForm::Q(q) => q.answers.iter().for_each(|a| a.collect_atoms(&mut out)),
        }
    }
    out
}
