use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{members, DefeaterSet};
use crate::formula::{Atom, DFormula, ParseError, Parser, Token};

static EMPTY: DefeaterSet = DefeaterSet::new();

/// Axiom defeater sets: for each atom `p`, the members an axiom on `p` may
/// carry. Atoms without an entry have the empty set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefeaterAssignment {
    by_atom: BTreeMap<Atom, DefeaterSet>,
}

impl DefeaterAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds members to the set of `atom`.
    pub fn insert(&mut self, atom: Atom, set: DefeaterSet) {
        self.by_atom.entry(atom).or_default().extend(set.iter().cloned());
    }

    pub fn get(&self, atom: &Atom) -> &DefeaterSet {
        self.by_atom.get(atom).unwrap_or(&EMPTY)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &DefeaterSet)> + '_ {
        self.by_atom.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.by_atom.values().all(DefeaterSet::is_empty)
    }

    /// Parses the line format `atom : {lit, lit}, {lit}`. `#` starts a
    /// comment; blank lines are skipped. Validation is separate, see
    /// [`validate_assignment`].
    pub fn parse(text: &str) -> Result<Self, AssignmentError> {
        let mut out = DefeaterAssignment::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let wrap = |error| AssignmentError { line: i + 1, error };
            let mut p = Parser::new(line).map_err(wrap)?;
            if p.at_end() {
                continue;
            }
            let (atom, set) = assignment_line(&mut p).map_err(wrap)?;
            out.insert(atom, set);
        }
        Ok(out)
    }
}

fn assignment_line(p: &mut Parser) -> Result<(Atom, DefeaterSet), ParseError> {
    let atom = p.atom()?;
    p.expect(&Token::Colon)?;
    let set = if p.at_end() { DefeaterSet::new() } else { members(p)? };
    p.expect_end()?;
    Ok((atom, set))
}

impl FromStr for DefeaterAssignment {
    type Err = AssignmentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DefeaterAssignment::parse(s)
    }
}

impl fmt::Display for DefeaterAssignment {
    /// Writes the line format read by [`DefeaterAssignment::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (atom, set) in &self.by_atom {
            write!(f, "{atom} :")?;
            for (i, m) in set.iter().enumerate() {
                f.write_str(if i == 0 { " " } else { ", " })?;
                write!(f, "{m}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct AssignmentError {
    pub line: usize,
    pub error: ParseError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NonLiteral,
    SelfReference,
}

/// A formula that may not occur in the defeater set of `atom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentViolation {
    pub atom: Atom,
    pub formula: DFormula,
    pub kind: ViolationKind,
}

impl fmt::Display for AssignmentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::NonLiteral => {
                write!(f, "{}: {} is not a literal", self.atom, self.formula)
            }
            ViolationKind::SelfReference => {
                write!(f, "{}: {} mentions the atom it defeats", self.atom, self.formula)
            }
        }
    }
}

/// Every member formula must be a literal other than `p` and `~p`.
pub fn validate_assignment(a: &DefeaterAssignment) -> Result<(), Vec<AssignmentViolation>> {
    let mut out = Vec::new();
    for (atom, set) in a.iter() {
        let own = DFormula::Atom(atom.clone());
        let own_neg = own.clone().neg();
        for f in set.iter().flat_map(|m| m.formulas()) {
            let kind = if !f.is_literal() {
                ViolationKind::NonLiteral
            } else if *f == own || *f == own_neg {
                ViolationKind::SelfReference
            } else {
                continue;
            };
            out.push(AssignmentViolation {
                atom: atom.clone(),
                formula: f.clone(),
                kind,
            });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_assignment_is_valid() {
        let a: DefeaterAssignment = "s : {r}\np : {t}  # comment\n\nq : {u, v}\n".parse().unwrap();
        assert_eq!(validate_assignment(&a), Ok(()));
        assert_eq!(a.get(&Atom::new("q").unwrap()).to_string(), "[{u, v}]");
        assert!(a.get(&Atom::new("z").unwrap()).is_empty());
        assert_eq!(a.to_string().parse::<DefeaterAssignment>().unwrap(), a);
    }

    #[test]
    fn violations_are_reported() {
        let a: DefeaterAssignment = "p : {p}".parse().unwrap();
        let v = validate_assignment(&a).unwrap_err();
        assert_eq!(v[0].kind, ViolationKind::SelfReference);
        let a: DefeaterAssignment = "p : {q & r}, {~p}".parse().unwrap();
        let v = validate_assignment(&a).unwrap_err();
        assert_eq!(v.len(), 2);
        assert!(v.iter().any(|x| x.kind == ViolationKind::NonLiteral));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = "p : {q}\nq {r}".parse::<DefeaterAssignment>().unwrap_err();
        assert_eq!(e.line, 2);
    }
}
