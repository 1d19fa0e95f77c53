//! Reading rules backwards: given a conclusion, enumerate the premise tuples
//! that would make it an instance of a rule.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::check::{binary_shape, unary_shape, Checker};
use super::{RuleId, Witness};
use crate::formula::{DFormula, Question, SForm};
use crate::prover::SearchBounds;
use crate::sequent::{DefeaterAssignment, DefeaterMember, DefeaterSet, Sequent};

/// One backward reading of a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub premises: Vec<Sequent>,
    pub witness: Option<Witness>,
}

/// The enumeration would exceed a search bound. Distinct from an empty
/// result, which means the rule does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: {needed} combinations exceed the limit of {limit}")]
pub struct BoundExceeded {
    pub what: &'static str,
    pub needed: u128,
    pub limit: usize,
}

/// Lets the search reject premises during enumeration.
pub(crate) trait PremiseFilter {
    /// Called once the two sides of a premise are fixed.
    fn sides(&self, antecedent: &BTreeSet<SForm>, succedent: &BTreeSet<SForm>) -> bool;
    /// Called on the complete premise.
    fn premise(&self, premise: &Sequent) -> bool;
}

struct AcceptAll;

impl PremiseFilter for AcceptAll {
    fn sides(&self, _: &BTreeSet<SForm>, _: &BTreeSet<SForm>) -> bool {
        true
    }

    fn premise(&self, _: &Sequent) -> bool {
        true
    }
}

/// Every schema-valid premise tuple for `conclusion` under `rule`.
///
/// Backward readings never copy a principal formula into a premise. `Cut`
/// has no candidates: it is not used in search.
pub fn premise_candidates(
    conclusion: &Sequent,
    rule: RuleId,
    assignment: &DefeaterAssignment,
    bounds: &SearchBounds,
) -> Result<Vec<Candidate>, BoundExceeded> {
    candidates_with(conclusion, rule, assignment, bounds, &AcceptAll)
}

pub(crate) fn candidates_with(
    c: &Sequent,
    rule: RuleId,
    assignment: &DefeaterAssignment,
    bounds: &SearchBounds,
    filter: &dyn PremiseFilter,
) -> Result<Vec<Candidate>, BoundExceeded> {
    let mut out = Vec::new();
    if rule.is_axiom() {
        if Checker::new(assignment).check_instance(rule, &[], c, None).is_ok() {
            out.push(Candidate {
                premises: vec![],
                witness: None,
            });
        }
        return Ok(out);
    }
    if let Some((left, shape)) = unary_shape(rule) {
        for f in principal_side(c, left) {
            if let Some(actives) = f.as_declarative().and_then(shape) {
                let base = vec![active_sides(left, actives)];
                Layout::logical(c, f, left, base).emit(bounds, filter, None, &mut out)?;
            }
        }
        return Ok(out);
    }
    if let Some((left, shape)) = binary_shape(rule) {
        for f in principal_side(c, left) {
            if let Some((a, b)) = f.as_declarative().and_then(shape) {
                let base = vec![active_sides(left, vec![a]), active_sides(left, vec![b])];
                Layout::logical(c, f, left, base).emit(bounds, filter, None, &mut out)?;
            }
        }
        return Ok(out);
    }
    match rule {
        RuleId::LW | RuleId::RW => {
            let left = rule == RuleId::LW;
            for f in principal_side(c, left) {
                let mut p = c.clone();
                if left {
                    p.antecedent.remove(f);
                } else {
                    p.succedent.remove(f);
                }
                if filter.sides(&p.antecedent, &p.succedent) && filter.premise(&p) {
                    out.push(Candidate {
                        premises: vec![p],
                        witness: None,
                    });
                }
            }
        }
        RuleId::DE => {
            let members: Vec<&DefeaterMember> = c.defeaters.iter().collect();
            let needed = (1u128 << members.len()) - 1;
            if needed > bounds.max_defeater_subsets as u128 {
                return Err(BoundExceeded {
                    what: "DE defeater subsets",
                    needed,
                    limit: bounds.max_defeater_subsets,
                });
            }
            if !filter.sides(&c.antecedent, &c.succedent) {
                return Ok(out);
            }
            // Largest subsets first: they stay closest to the conclusion.
            let full = (1usize << members.len()) - 1;
            for mask in (0..full).rev() {
                let defs: DefeaterSet = members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, m)| (*m).clone())
                    .collect();
                let p = c.with_defeaters(defs);
                if filter.premise(&p) {
                    out.push(Candidate {
                        premises: vec![p],
                        witness: None,
                    });
                }
            }
        }
        RuleId::QR1 => {
            if c.antecedent.iter().any(SForm::is_question) {
                return Ok(out);
            }
            for (f, q) in questions(&c.succedent) {
                let Some((required, optional)) = split_answer_members(c, q) else {
                    continue;
                };
                let base = vec![(BTreeSet::new(), q.answers().iter().cloned().map(SForm::D).collect())];
                Layout {
                    base,
                    ant_ctx: c.antecedent.iter().cloned().collect(),
                    succ_ctx: without(&c.succedent, f),
                    required,
                    optional,
                }
                .emit(bounds, filter, None, &mut out)?;
            }
        }
        RuleId::QL1 => {
            if c.succedent.iter().any(SForm::is_question) {
                return Ok(out);
            }
            for (f, q) in questions(&c.antecedent) {
                let Some((required, optional)) = split_answer_members(c, q) else {
                    continue;
                };
                let base = q
                    .answers()
                    .iter()
                    .map(|a| (BTreeSet::from([SForm::D(a.clone())]), BTreeSet::new()))
                    .collect();
                Layout {
                    base,
                    ant_ctx: without(&c.antecedent, f),
                    succ_ctx: c.succedent.iter().cloned().collect(),
                    required,
                    optional,
                }
                .emit(bounds, filter, None, &mut out)?;
            }
        }
        RuleId::QR2 | RuleId::QL2 => {
            for (f, q) in questions(&c.antecedent) {
                let Some((required, optional)) = split_answer_members(c, q) else {
                    continue;
                };
                for (g, q2) in questions(&c.succedent) {
                    for w in witnesses(q, q2) {
                        let mut base: Vec<(BTreeSet<SForm>, BTreeSet<SForm>)> = Vec::new();
                        if rule == RuleId::QR2 {
                            base.push((
                                BTreeSet::from([f.clone()]),
                                q2.answers().iter().cloned().map(SForm::D).collect(),
                            ));
                        } else {
                            for a in q.answers() {
                                base.push((BTreeSet::from([SForm::D(a.clone())]), BTreeSet::from([g.clone()])));
                            }
                        }
                        for b in q2.answers() {
                            base.push((
                                BTreeSet::from([SForm::D(b.clone())]),
                                BTreeSet::from([SForm::D(w[b].clone())]),
                            ));
                        }
                        Layout {
                            base,
                            ant_ctx: without(&c.antecedent, f),
                            succ_ctx: without(&c.succedent, g),
                            required: required.clone(),
                            optional: optional.clone(),
                        }
                        .emit(bounds, filter, Some(&w), &mut out)?;
                    }
                }
            }
        }
        RuleId::Cut => {}
        _ => unreachable!("all rules are covered"),
    }
    Ok(out)
}

fn active_sides(left: bool, actives: Vec<DFormula>) -> (BTreeSet<SForm>, BTreeSet<SForm>) {
    let side = actives.into_iter().map(SForm::D).collect();
    if left {
        (side, BTreeSet::new())
    } else {
        (BTreeSet::new(), side)
    }
}

fn principal_side(c: &Sequent, left: bool) -> &BTreeSet<SForm> {
    if left {
        &c.antecedent
    } else {
        &c.succedent
    }
}

fn questions(side: &BTreeSet<SForm>) -> impl Iterator<Item = (&SForm, &Question)> + '_ {
    side.iter().filter_map(|f| f.as_question().map(|q| (f, q)))
}

fn without(side: &BTreeSet<SForm>, f: &SForm) -> Vec<SForm> {
    side.iter().filter(|g| *g != f).cloned().collect()
}

/// Splits conclusion defeaters for an erotetic rule on `q`: members outside
/// the answer singletons must come from premises, the singletons may. `None`
/// if a singleton is missing from the conclusion.
fn split_answer_members(c: &Sequent, q: &Question) -> Option<(Vec<DefeaterMember>, Vec<DefeaterMember>)> {
    let singles = DefeaterSet::answer_singletons(q);
    if !singles.is_subset(&c.defeaters) {
        return None;
    }
    let required = c.defeaters.difference(&singles).iter().cloned().collect();
    Some((required, singles.iter().cloned().collect()))
}

/// All maps from the answers of `q2` into the answers of `q`.
fn witnesses(q: &Question, q2: &Question) -> Vec<Witness> {
    let mut out = vec![Witness::new()];
    for b in q2.answers() {
        out = out
            .into_iter()
            .flat_map(|w| {
                q.answers().iter().map(move |a| {
                    let mut w = w.clone();
                    w.insert(b.clone(), a.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Premise skeletons plus the conclusion material to distribute over them.
struct Layout {
    /// Active formulas of each premise, antecedent and succedent.
    base: Vec<(BTreeSet<SForm>, BTreeSet<SForm>)>,
    ant_ctx: Vec<SForm>,
    succ_ctx: Vec<SForm>,
    /// Members that some premise must carry.
    required: Vec<DefeaterMember>,
    /// Members any subset of premises may carry, including none.
    optional: Vec<DefeaterMember>,
}

impl Layout {
    /// Layout for a d-wff rule: context is everything but the principal, and
    /// every defeater member comes from some premise.
    fn logical(c: &Sequent, f: &SForm, left: bool, base: Vec<(BTreeSet<SForm>, BTreeSet<SForm>)>) -> Self {
        let (ant_ctx, succ_ctx) = if left {
            (without(&c.antecedent, f), c.succedent.iter().cloned().collect())
        } else {
            (c.antecedent.iter().cloned().collect(), without(&c.succedent, f))
        };
        Layout {
            base,
            ant_ctx,
            succ_ctx,
            required: c.defeaters.iter().cloned().collect(),
            optional: vec![],
        }
    }

    fn emit(
        self,
        bounds: &SearchBounds,
        filter: &dyn PremiseFilter,
        witness: Option<&Witness>,
        out: &mut Vec<Candidate>,
    ) -> Result<(), BoundExceeded> {
        let n = self.base.len();
        let all: u32 = (1u32 << n) - 1;
        // Allowed premise masks for each context formula. A formula already
        // active in some premise need not be placed anywhere else.
        let placements = |f: &SForm, left: bool| -> Vec<u32> {
            let fixed = self
                .base
                .iter()
                .enumerate()
                .filter(|(_, b)| if left { b.0.contains(f) } else { b.1.contains(f) })
                .fold(0u32, |m, (i, _)| m | 1 << i);
            let free = all & !fixed;
            submasks(free).filter(|&m| fixed != 0 || m != 0).collect()
        };
        let side_items: Vec<(bool, &SForm, Vec<u32>)> = self
            .ant_ctx
            .iter()
            .map(|f| (true, f, placements(f, true)))
            .chain(self.succ_ctx.iter().map(|f| (false, f, placements(f, false))))
            .collect();
        let def_items: Vec<(&DefeaterMember, Vec<u32>)> = self
            .required
            .iter()
            .map(|m| (m, submasks(all).filter(|&x| x != 0).collect()))
            .chain(self.optional.iter().map(|m| (m, submasks(all).collect())))
            .collect();
        let side_count = product(side_items.iter().map(|i| i.2.len()));
        if side_count > bounds.max_context_split as u128 {
            return Err(BoundExceeded {
                what: "context splits",
                needed: side_count,
                limit: bounds.max_context_split,
            });
        }
        let def_count = product(def_items.iter().map(|i| i.1.len()));
        if def_count > bounds.max_defeater_subsets as u128 {
            return Err(BoundExceeded {
                what: "defeater splits",
                needed: def_count,
                limit: bounds.max_defeater_subsets,
            });
        }
        let radices: Vec<usize> = side_items.iter().map(|i| i.2.len()).collect();
        for choice in MixedRadix::new(radices) {
            let mut sides = self.base.clone();
            for ((left, f, masks), &k) in side_items.iter().zip(&choice) {
                for (i, side) in sides.iter_mut().enumerate() {
                    if masks[k] >> i & 1 == 1 {
                        let target = if *left { &mut side.0 } else { &mut side.1 };
                        target.insert((*f).clone());
                    }
                }
            }
            if !sides.iter().all(|(a, s)| filter.sides(a, s)) {
                continue;
            }
            let def_radices: Vec<usize> = def_items.iter().map(|i| i.1.len()).collect();
            'defs: for dchoice in MixedRadix::new(def_radices) {
                let mut defs = vec![DefeaterSet::new(); n];
                for ((m, masks), &k) in def_items.iter().zip(&dchoice) {
                    for (i, d) in defs.iter_mut().enumerate() {
                        if masks[k] >> i & 1 == 1 {
                            d.insert((*m).clone());
                        }
                    }
                }
                let mut premises = Vec::with_capacity(n);
                for ((a, s), d) in sides.iter().zip(defs) {
                    let p = Sequent {
                        antecedent: a.clone(),
                        succedent: s.clone(),
                        defeaters: d,
                    };
                    if !filter.premise(&p) {
                        continue 'defs;
                    }
                    premises.push(p);
                }
                out.push(Candidate {
                    premises,
                    witness: witness.cloned(),
                });
            }
        }
        Ok(())
    }
}

fn product<I: Iterator<Item = usize>>(it: I) -> u128 {
    it.fold(1u128, |acc, x| acc.saturating_mul(x as u128))
}

/// All submasks of `mask`, including 0 and `mask` itself.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Counter over `radices[0] × radices[1] × …`; yields nothing if any radix
/// is 0, and one empty choice when there are no digits.
struct MixedRadix {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl MixedRadix {
    fn new(radices: Vec<usize>) -> Self {
        let current = if radices.contains(&0) {
            None
        } else {
            Some(vec![0; radices.len()])
        };
        MixedRadix { radices, current }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.clone()?;
        let mut nxt = cur.clone();
        let mut i = 0;
        loop {
            if i == nxt.len() {
                self.current = None;
                break;
            }
            nxt[i] += 1;
            if nxt[i] < self.radices[i] {
                self.current = Some(nxt);
                break;
            }
            nxt[i] = 0;
            i += 1;
        }
        Some(cur)
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", ps.join(" ; "))
    }
}
