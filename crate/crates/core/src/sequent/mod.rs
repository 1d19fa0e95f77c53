//! Defeasible sequents, defeater sets and the defeat relation.
//!
//! A sequent `Γ |- [Z1, ..., Zk] Δ` is *defeated* when the declarativized
//! antecedent entails the disjunction of some member `Zi`.

mod assignment;
mod cache;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::formula::{DFormula, ParseError, Parser, Question, SForm, Token};
use crate::semantics::{declarativize, entails};

pub use assignment::{validate_assignment, AssignmentError, AssignmentViolation, DefeaterAssignment, ViolationKind};
pub use cache::DefeatCache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentError {
    #[error("defeater members must be nonempty")]
    EmptyMember,
}

/// One member of a defeater set: a nonempty set of formulas, read
/// disjunctively.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefeaterMember(BTreeSet<DFormula>);

impl DefeaterMember {
    pub fn new<I: IntoIterator<Item = DFormula>>(formulas: I) -> Result<Self, SequentError> {
        let set: BTreeSet<DFormula> = formulas.into_iter().collect();
        if set.is_empty() {
            Err(SequentError::EmptyMember)
        } else {
            Ok(DefeaterMember(set))
        }
    }

    pub fn singleton(f: DFormula) -> Self {
        DefeaterMember(BTreeSet::from([f]))
    }

    pub fn formulas(&self) -> &BTreeSet<DFormula> {
        &self.0
    }

    /// The single formula of a singleton member.
    pub fn as_singleton(&self) -> Option<&DFormula> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }
}

impl fmt::Display for DefeaterMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DefeaterMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A set of defeater members.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefeaterSet(BTreeSet<DefeaterMember>);

impl DefeaterSet {
    pub const fn new() -> Self {
        DefeaterSet(BTreeSet::new())
    }

    /// The singletons `{A}` for every answer `A` of `q`.
    pub fn answer_singletons(q: &Question) -> Self {
        q.answers().iter().cloned().map(DefeaterMember::singleton).collect()
    }

    pub fn insert(&mut self, m: DefeaterMember) -> bool {
        self.0.insert(m)
    }

    pub fn remove(&mut self, m: &DefeaterMember) -> bool {
        self.0.remove(m)
    }

    pub fn contains(&self, m: &DefeaterMember) -> bool {
        self.0.contains(m)
    }

    pub fn union(&self, other: &DefeaterSet) -> DefeaterSet {
        DefeaterSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &DefeaterSet) -> DefeaterSet {
        DefeaterSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &DefeaterSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &DefeaterMember> + '_ {
        self.0.iter()
    }

    pub fn members(&self) -> &BTreeSet<DefeaterMember> {
        &self.0
    }
}

impl FromIterator<DefeaterMember> for DefeaterSet {
    fn from_iter<I: IntoIterator<Item = DefeaterMember>>(iter: I) -> Self {
        DefeaterSet(iter.into_iter().collect())
    }
}

impl Extend<DefeaterMember> for DefeaterSet {
    fn extend<I: IntoIterator<Item = DefeaterMember>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a DefeaterSet {
    type Item = &'a DefeaterMember;
    type IntoIter = std::collections::btree_set::Iter<'a, DefeaterMember>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for DefeaterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for DefeaterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for DefeaterSet {
    type Err = ParseError;

    /// Parses `[{a, b}, {c}]`; the brackets are optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s)?;
        let bracketed = p.eat(&Token::LBracket);
        let empty = if bracketed { p.eat(&Token::RBracket) } else { p.at_end() };
        let set = if empty {
            DefeaterSet::new()
        } else {
            let set = members(&mut p)?;
            if bracketed {
                p.expect(&Token::RBracket)?;
            }
            set
        };
        p.expect_end()?;
        Ok(set)
    }
}

/// A defeasible sequent. Both sides are sets, so contraction and exchange
/// are implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: BTreeSet<SForm>,
    pub succedent: BTreeSet<SForm>,
    pub defeaters: DefeaterSet,
}

impl Sequent {
    pub fn new<A, S>(antecedent: A, succedent: S, defeaters: DefeaterSet) -> Self
    where
        A: IntoIterator<Item = SForm>,
        S: IntoIterator<Item = SForm>,
    {
        Sequent {
            antecedent: antecedent.into_iter().collect(),
            succedent: succedent.into_iter().collect(),
            defeaters,
        }
    }

    /// A sequent over declarative formulas only.
    pub fn declarative<A, S>(antecedent: A, succedent: S, defeaters: DefeaterSet) -> Self
    where
        A: IntoIterator<Item = DFormula>,
        S: IntoIterator<Item = DFormula>,
    {
        Sequent::new(
            antecedent.into_iter().map(SForm::D),
            succedent.into_iter().map(SForm::D),
            defeaters,
        )
    }

    /// True when no question occurs on either side.
    pub fn is_declarative(&self) -> bool {
        !self.antecedent.iter().chain(&self.succedent).any(SForm::is_question)
    }

    pub fn is_defeated(&self) -> bool {
        is_defeated(&self.antecedent, &self.defeaters)
    }

    pub fn defeat_witness(&self) -> Option<&DefeaterMember> {
        defeat_witness(&self.antecedent, &self.defeaters)
    }

    /// Both sides declarativized, defeaters unchanged.
    pub fn declarativized(&self) -> Sequent {
        Sequent::declarative(
            declarativize(&self.antecedent),
            declarativize(&self.succedent),
            self.defeaters.clone(),
        )
    }

    /// Whether the declarativized antecedent entails the declarativized
    /// succedent; necessary for derivability.
    pub fn is_valid(&self) -> bool {
        entails(&declarativize(&self.antecedent), &declarativize(&self.succedent))
    }

    pub fn with_defeaters(&self, defeaters: DefeaterSet) -> Sequent {
        Sequent {
            antecedent: self.antecedent.clone(),
            succedent: self.succedent.clone(),
            defeaters,
        }
    }
}

/// The first member (in set order) whose disjunction the declarativized
/// antecedent entails.
pub fn defeat_witness<'a, 'd, A>(antecedent: A, defeaters: &'d DefeaterSet) -> Option<&'d DefeaterMember>
where
    A: IntoIterator<Item = &'a SForm>,
{
    if defeaters.is_empty() {
        return None;
    }
    let ant = declarativize(antecedent);
    defeaters.iter().find(|m| entails(&ant, m.formulas()))
}

pub fn is_defeated<'a, A>(antecedent: A, defeaters: &DefeaterSet) -> bool
where
    A: IntoIterator<Item = &'a SForm>,
{
    defeat_witness(antecedent, defeaters).is_some()
}

pub fn compatible<'a, A>(antecedent: A, defeaters: &DefeaterSet) -> bool
where
    A: IntoIterator<Item = &'a SForm>,
{
    !is_defeated(antecedent, defeaters)
}

fn write_forms(f: &mut fmt::Formatter<'_>, forms: &BTreeSet<SForm>) -> fmt::Result {
    for (i, s) in forms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_forms(f, &self.antecedent)?;
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.defeaters)?;
        if !self.succedent.is_empty() {
            f.write_str(" ")?;
        }
        write_forms(f, &self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

fn member(p: &mut Parser) -> Result<DefeaterMember, ParseError> {
    p.expect(&Token::LBrace)?;
    let mut fs = vec![p.dformula()?];
    while p.eat(&Token::Comma) {
        fs.push(p.dformula()?);
    }
    p.expect(&Token::RBrace)?;
    Ok(DefeaterMember::new(fs).expect("at least one formula was parsed"))
}

pub(crate) fn members(p: &mut Parser) -> Result<DefeaterSet, ParseError> {
    let mut set = DefeaterSet::new();
    set.insert(member(p)?);
    while p.eat(&Token::Comma) {
        set.insert(member(p)?);
    }
    Ok(set)
}

fn forms(p: &mut Parser) -> Result<BTreeSet<SForm>, ParseError> {
    let mut out = BTreeSet::new();
    out.insert(p.sform()?);
    while p.eat(&Token::Comma) {
        out.insert(p.sform()?);
    }
    Ok(out)
}

/// Parses `forms? |- ([members])? forms?`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let antecedent = if *p.peek() == Token::Turnstile {
        BTreeSet::new()
    } else {
        forms(&mut p)?
    };
    p.expect(&Token::Turnstile)?;
    let mut defeaters = DefeaterSet::new();
    if p.eat(&Token::LBracket) && !p.eat(&Token::RBracket) {
        defeaters = members(&mut p)?;
        p.expect(&Token::RBracket)?;
    }
    let succedent = if p.at_end() { BTreeSet::new() } else { forms(&mut p)? };
    p.expect_end()?;
    Ok(Sequent {
        antecedent,
        succedent,
        defeaters,
    })
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_sequent(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sform;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn defeated(ant: &[&str], defs: &str) -> bool {
        let ant: Vec<SForm> = ant.iter().map(|s| parse_sform(s).unwrap()).collect();
        is_defeated(&ant, &defs.parse().unwrap())
    }

    #[test]
    fn defeat_examples() {
        assert!(defeated(&["p & q"], "[{p}]"));
        assert!(!defeated(&["p"], "[{p & q}]"));
        assert!(defeated(&["p"], "[{p | q}]"));
        assert!(!defeated(&["p | q"], "[{p}]"));
        assert!(defeated(&["q"], "[{s}, {q}]"));
        assert!(defeated(&["p", "r"], "[{p}, {s}]"));
        assert!(!defeated(&["p", "q"], "[]"));
    }

    #[test]
    fn members_are_disjunctive() {
        assert!(defeated(&["u"], "[{u, v}]"));
        assert!(defeated(&["u | v"], "[{u, v}]"));
        assert!(!defeated(&["u | v"], "[{u}, {v}]"));
    }

    #[test]
    fn questions_are_declarativized() {
        assert!(defeated(&["?{p, q}", "~q"], "[{p}]"));
        assert!(!defeated(&["?{p, q}"], "[{p}, {q}]"));
    }

    #[test]
    fn compatibility_negates_defeat() {
        let ant = [parse_sform("p & q").unwrap()];
        let defs: DefeaterSet = "[{p}]".parse().unwrap();
        assert!(!compatible(&ant, &defs));
    }

    #[test]
    fn sequent_round_trip() {
        let s = seq("p | q, r |- [{t},{p},{s},{q}] p & r, q");
        assert_eq!(s.defeaters.len(), 4);
        assert_eq!(seq(&s.to_string()), s);
        assert_eq!(seq("p, ~p |- ").to_string(), "p, ~p |- []");
        assert_eq!(seq("|- p, ~p").to_string(), "|- [] p, ~p");
        assert_eq!(seq("|-[]"), seq("|-"));
    }

    #[test]
    fn sequent_parse_errors() {
        assert!(parse_sequent("p q |- r").is_err());
        assert!(parse_sequent("p |- [{}] r").is_err());
        assert!(parse_sequent("p |- [{p}").is_err());
        assert!(parse_sequent("p").is_err());
    }

    #[test]
    fn empty_member_rejected() {
        assert_eq!(DefeaterMember::new([]), Err(SequentError::EmptyMember));
    }

    #[test]
    fn witness_is_first_in_order() {
        let s = seq("p, ~p |- [{r}, {q}] q");
        assert_eq!(s.defeat_witness().unwrap().to_string(), "{q}");
    }
}
