use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use super::{DefeaterMember, DefeaterSet};
use crate::formula::{DFormula, SForm};
use crate::semantics::{declarativize, entails};

type Key = (BTreeSet<DFormula>, DefeaterMember);

/// Memoized defeat checks keyed on the declarativized antecedent and one
/// member. Safe to share between threads; every entry is a pure function of
/// its key, so concurrent fills cannot disagree.
#[derive(Debug, Default)]
pub struct DefeatCache {
    fired: RwLock<HashMap<Key, bool>>,
}

impl DefeatCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether `antecedent` (already declarative) entails the member.
    pub fn fires(&self, antecedent: &BTreeSet<DFormula>, member: &DefeaterMember) -> bool {
        let key = (antecedent.clone(), member.clone());
        if let Some(&hit) = self.fired.read().expect("cache lock").get(&key) {
            return hit;
        }
        let value = entails(antecedent, member.formulas());
        self.fired.write().expect("cache lock").insert(key, value);
        value
    }

    pub fn witness<'a, 'd, A>(&self, antecedent: A, defeaters: &'d DefeaterSet) -> Option<&'d DefeaterMember>
    where
        A: IntoIterator<Item = &'a SForm>,
    {
        if defeaters.is_empty() {
            return None;
        }
        let ant = declarativize(antecedent);
        defeaters.iter().find(|m| self.fires(&ant, m))
    }

    pub fn is_defeated<'a, A>(&self, antecedent: A, defeaters: &DefeaterSet) -> bool
    where
        A: IntoIterator<Item = &'a SForm>,
    {
        self.witness(antecedent, defeaters).is_some()
    }

    pub fn len(&self) -> usize {
        self.fired.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
