use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{Classification, ProofTree, RuleId, Witness};
use crate::formula::{DFormula, Question, SForm};
use crate::sequent::{DefeatCache, DefeaterAssignment, DefeaterSet, Sequent};

/// The part of a schema an inference failed to match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemaElement {
    Principal,
    Antecedent,
    Succedent,
    Defeaters,
    Witness,
    Proviso,
}

impl fmt::Display for SchemaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemaElement::Principal => "principal formula",
            SchemaElement::Antecedent => "antecedent",
            SchemaElement::Succedent => "succedent",
            SchemaElement::Defeaters => "defeater set",
            SchemaElement::Witness => "witness map",
            SchemaElement::Proviso => "proviso",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("{rule} takes {expected} premise(s), found {found}")]
    Arity {
        rule: RuleId,
        expected: usize,
        found: usize,
    },
    #[error("{rule}: {element} mismatch: {detail}")]
    Mismatch {
        rule: RuleId,
        element: SchemaElement,
        detail: String,
    },
}

fn mismatch(rule: RuleId, element: SchemaElement, detail: impl Into<String>) -> InstanceError {
    InstanceError::Mismatch {
        rule,
        element,
        detail: detail.into(),
    }
}

fn arity(rule: RuleId, expected: usize, found: usize) -> Result<(), InstanceError> {
    if expected == found {
        Ok(())
    } else {
        Err(InstanceError::Arity { rule, expected, found })
    }
}

/// Checks a conclusion side against premise sides.
///
/// Each premise side `P_i` lists its active formulas `act_i`, which must
/// occur in it. With `M = ⋃(P_i \ act_i) ∪ {principal}` the conclusion side
/// `C` must satisfy `M ⊆ C ⊆ M ∪ ⋃ act_i`: every context formula is kept,
/// and actives either disappear or coincide with context.
fn side_ok(
    conclusion: &BTreeSet<SForm>,
    parts: &[(&BTreeSet<SForm>, Vec<SForm>)],
    principal: Option<&SForm>,
) -> Result<(), String> {
    let mut minimal: BTreeSet<&SForm> = BTreeSet::new();
    let mut optional: BTreeSet<&SForm> = BTreeSet::new();
    for (side, act) in parts {
        if let Some(missing) = act.iter().find(|a| !side.contains(*a)) {
            return Err(format!("premise lacks active formula {missing}"));
        }
        for f in side.iter() {
            if act.contains(f) {
                optional.insert(f);
            } else {
                minimal.insert(f);
            }
        }
    }
    if let Some(p) = principal {
        minimal.insert(p);
    }
    if let Some(lost) = minimal.iter().find(|f| !conclusion.contains(**f)) {
        return Err(format!("conclusion lacks {lost}"));
    }
    if let Some(extra) = conclusion
        .iter()
        .find(|f| !minimal.contains(f) && !optional.contains(f))
    {
        return Err(format!("{extra} in conclusion is not accounted for"));
    }
    Ok(())
}

fn union_of<'a, I: IntoIterator<Item = &'a DefeaterSet>>(sets: I) -> DefeaterSet {
    let mut out = DefeaterSet::new();
    for s in sets {
        out.extend(s.iter().cloned());
    }
    out
}

fn d(f: &DFormula) -> SForm {
    SForm::D(f.clone())
}

fn ds(fs: &[DFormula]) -> Vec<SForm> {
    fs.iter().map(d).collect()
}

fn questions(side: &BTreeSet<SForm>) -> impl Iterator<Item = (&SForm, &Question)> + '_ {
    side.iter().filter_map(|f| f.as_question().map(|q| (f, q)))
}

type Unary = fn(&DFormula) -> Option<Vec<DFormula>>;
type Binary = fn(&DFormula) -> Option<(DFormula, DFormula)>;

pub(crate) fn unary_shape(rule: RuleId) -> Option<(bool, Unary)> {
    use DFormula::*;
    let shape: (bool, Unary) = match rule {
        RuleId::AndL => (true, |f| match f {
            And(a, b) => Some(vec![(**a).clone(), (**b).clone()]),
            _ => None,
        }),
        RuleId::OrR => (false, |f| match f {
            Or(a, b) => Some(vec![(**a).clone(), (**b).clone()]),
            _ => None,
        }),
        RuleId::NegNegL | RuleId::NegNegR => (rule == RuleId::NegNegL, |f| match f {
            Neg(a) => match &**a {
                Neg(b) => Some(vec![(**b).clone()]),
                _ => None,
            },
            _ => None,
        }),
        RuleId::NegAndR => (false, |f| match f {
            Neg(a) => match &**a {
                And(x, y) => Some(vec![(**x).clone().neg(), (**y).clone().neg()]),
                _ => None,
            },
            _ => None,
        }),
        RuleId::NegOrL => (true, |f| match f {
            Neg(a) => match &**a {
                Or(x, y) => Some(vec![(**x).clone().neg(), (**y).clone().neg()]),
                _ => None,
            },
            _ => None,
        }),
        _ => return None,
    };
    Some(shape)
}

pub(crate) fn binary_shape(rule: RuleId) -> Option<(bool, Binary)> {
    use DFormula::*;
    let shape: (bool, Binary) = match rule {
        RuleId::AndR => (false, |f| match f {
            And(a, b) => Some(((**a).clone(), (**b).clone())),
            _ => None,
        }),
        RuleId::OrL => (true, |f| match f {
            Or(a, b) => Some(((**a).clone(), (**b).clone())),
            _ => None,
        }),
        RuleId::NegAndL => (true, |f| match f {
            Neg(a) => match &**a {
                And(x, y) => Some(((**x).clone().neg(), (**y).clone().neg())),
                _ => None,
            },
            _ => None,
        }),
        RuleId::NegOrR => (false, |f| match f {
            Neg(a) => match &**a {
                Or(x, y) => Some(((**x).clone().neg(), (**y).clone().neg())),
                _ => None,
            },
            _ => None,
        }),
        _ => return None,
    };
    Some(shape)
}

/// Every permutation of `0..n`, identity first.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

const MAX_PERMUTED_PREMISES: usize = 6;

/// Validates inferences against the rule schemas under a defeater
/// assignment.
#[derive(Debug, Clone, Copy)]
pub struct Checker<'a> {
    assignment: &'a DefeaterAssignment,
    exact_axioms: bool,
}

impl<'a> Checker<'a> {
    /// A checker that lets axioms carry any subset of the assigned set.
    pub fn new(assignment: &'a DefeaterAssignment) -> Self {
        Checker {
            assignment,
            exact_axioms: false,
        }
    }

    /// Requires axioms on `p` to carry exactly the assigned set of `p`.
    pub fn exact_axioms(mut self, exact: bool) -> Self {
        self.exact_axioms = exact;
        self
    }

    pub fn assignment(&self) -> &'a DefeaterAssignment {
        self.assignment
    }

    /// Checks one inference. Premise order does not matter.
    pub fn check_instance(
        &self,
        rule: RuleId,
        premises: &[Sequent],
        conclusion: &Sequent,
        witness: Option<&Witness>,
    ) -> Result<(), InstanceError> {
        if witness.is_some() && !matches!(rule, RuleId::QR2 | RuleId::QL2) {
            return Err(mismatch(
                rule,
                SchemaElement::Witness,
                "only QR2 and QL2 carry witnesses",
            ));
        }
        let orders = match premises.len() {
            0 | 1 => vec![(0..premises.len()).collect()],
            2 => vec![vec![0, 1], vec![1, 0]],
            n if n <= MAX_PERMUTED_PREMISES && rule.is_erotetic() => permutations(n),
            n => vec![(0..n).collect()],
        };
        let mut first = None;
        for order in orders {
            let ps: Vec<&Sequent> = order.iter().map(|&i| &premises[i]).collect();
            match self.check_ordered(rule, &ps, conclusion, witness) {
                Ok(()) => return Ok(()),
                Err(e) => {
                    first.get_or_insert(e);
                }
            }
        }
        Err(first.expect("at least one order is tried"))
    }

    fn check_ordered(
        &self,
        rule: RuleId,
        ps: &[&Sequent],
        c: &Sequent,
        witness: Option<&Witness>,
    ) -> Result<(), InstanceError> {
        if rule.is_axiom() {
            arity(rule, 0, ps.len())?;
            return self.axiom(rule, c);
        }
        if let Some((left, shape)) = unary_shape(rule) {
            arity(rule, 1, ps.len())?;
            return unary(rule, ps[0], c, left, shape);
        }
        if let Some((left, shape)) = binary_shape(rule) {
            arity(rule, 2, ps.len())?;
            return binary(rule, ps[0], ps[1], c, left, shape);
        }
        match rule {
            RuleId::LW | RuleId::RW => {
                arity(rule, 1, ps.len())?;
                weakening(rule, ps[0], c)
            }
            RuleId::DE => {
                arity(rule, 1, ps.len())?;
                let p = ps[0];
                if p.antecedent != c.antecedent {
                    return Err(mismatch(rule, SchemaElement::Antecedent, "must be unchanged"));
                }
                if p.succedent != c.succedent {
                    return Err(mismatch(rule, SchemaElement::Succedent, "must be unchanged"));
                }
                if !p.defeaters.is_subset(&c.defeaters) {
                    return Err(mismatch(
                        rule,
                        SchemaElement::Defeaters,
                        "conclusion must extend the premise",
                    ));
                }
                Ok(())
            }
            RuleId::QR1 => {
                arity(rule, 1, ps.len())?;
                qr1(ps[0], c)
            }
            RuleId::QL1 => ql1(ps, c),
            RuleId::QR2 | RuleId::QL2 => two_questions(rule, ps, c, witness),
            RuleId::Cut => {
                arity(rule, 2, ps.len())?;
                cut(ps[0], ps[1], c)
            }
            _ => unreachable!("all rules are covered"),
        }
    }

    fn axiom(&self, rule: RuleId, c: &Sequent) -> Result<(), InstanceError> {
        let shape_err = || mismatch(rule, SchemaElement::Principal, format!("{} is not an instance", c));
        let single = |side: &BTreeSet<SForm>| -> Option<DFormula> {
            match (side.len(), side.iter().next()) {
                (1, Some(SForm::D(f))) => Some(f.clone()),
                _ => None,
            }
        };
        let pair_atom = |side: &BTreeSet<SForm>| -> Option<DFormula> {
            if side.len() != 2 {
                return None;
            }
            let atom = side
                .iter()
                .find_map(|f| f.as_declarative().filter(|d| d.as_atom().is_some()))?;
            side.contains(&SForm::D(atom.clone().neg())).then(|| atom.clone())
        };
        let atom = match rule {
            RuleId::Ax1 => match (single(&c.antecedent), single(&c.succedent)) {
                (Some(a), Some(b)) if a == b && a.as_atom().is_some() => a,
                _ => return Err(shape_err()),
            },
            RuleId::Ax2 => match (single(&c.antecedent), single(&c.succedent)) {
                (Some(DFormula::Neg(a)), Some(DFormula::Neg(b))) if a == b && a.as_atom().is_some() => *a,
                _ => return Err(shape_err()),
            },
            RuleId::Ax3 => match pair_atom(&c.succedent) {
                Some(a) if c.antecedent.is_empty() => a,
                _ => return Err(shape_err()),
            },
            RuleId::Ax4 => {
                if pair_atom(&c.antecedent).is_none() || !c.succedent.is_empty() {
                    return Err(shape_err());
                }
                if !c.defeaters.is_empty() {
                    return Err(mismatch(rule, SchemaElement::Defeaters, "must be empty"));
                }
                return Ok(());
            }
            _ => unreachable!("only axioms reach here"),
        };
        let allowed = self.assignment.get(atom.as_atom().expect("axiom atom"));
        let ok = if self.exact_axioms {
            c.defeaters == *allowed
        } else {
            c.defeaters.is_subset(allowed)
        };
        if ok {
            Ok(())
        } else {
            Err(mismatch(
                rule,
                SchemaElement::Defeaters,
                format!("{} not allowed for {atom}; assigned {allowed}", c.defeaters),
            ))
        }
    }

    /// Classifies a tree. Inference errors take precedence over defeat.
    pub fn check_tree(&self, tree: &ProofTree) -> Classification {
        let nodes = tree.nodes();
        for (path, node) in &nodes {
            let premises: Vec<Sequent> = node.premises.iter().map(|p| p.sequent.clone()).collect();
            if let Err(reason) = self.check_instance(node.rule, &premises, &node.sequent, node.witness.as_ref()) {
                return Classification::NotADerivation {
                    path: path.clone(),
                    reason,
                };
            }
        }
        let cache = DefeatCache::new();
        let defeated: Vec<Vec<usize>> = nodes
            .into_iter()
            .filter(|(_, n)| cache.is_defeated(&n.sequent.antecedent, &n.sequent.defeaters))
            .map(|(p, _)| p)
            .collect();
        if defeated.is_empty() {
            Classification::Proof
        } else {
            Classification::Paraproof { defeated }
        }
    }
}

pub fn check_instance(
    rule: RuleId,
    premises: &[Sequent],
    conclusion: &Sequent,
    witness: Option<&Witness>,
    assignment: &DefeaterAssignment,
) -> Result<(), InstanceError> {
    Checker::new(assignment).check_instance(rule, premises, conclusion, witness)
}

pub fn check_tree(tree: &ProofTree, assignment: &DefeaterAssignment) -> Classification {
    Checker::new(assignment).check_tree(tree)
}

fn sides(s: &Sequent, left: bool) -> (&BTreeSet<SForm>, &BTreeSet<SForm>) {
    if left {
        (&s.antecedent, &s.succedent)
    } else {
        (&s.succedent, &s.antecedent)
    }
}

fn elements(left: bool) -> (SchemaElement, SchemaElement) {
    if left {
        (SchemaElement::Antecedent, SchemaElement::Succedent)
    } else {
        (SchemaElement::Succedent, SchemaElement::Antecedent)
    }
}

/// Tries each candidate principal; reports the first failure if none fits.
fn any_principal<'f, I, F>(rule: RuleId, candidates: I, mut check: F) -> Result<(), InstanceError>
where
    I: IntoIterator<Item = &'f SForm>,
    F: FnMut(&'f SForm) -> Result<(), InstanceError>,
{
    let mut first = None;
    for f in candidates {
        match check(f) {
            Ok(()) => return Ok(()),
            Err(e) => {
                first.get_or_insert(e);
            }
        }
    }
    Err(first.unwrap_or_else(|| mismatch(rule, SchemaElement::Principal, "no formula of the required shape")))
}

fn unary(rule: RuleId, p: &Sequent, c: &Sequent, left: bool, shape: Unary) -> Result<(), InstanceError> {
    let (c_main, c_other) = sides(c, left);
    let (p_main, p_other) = sides(p, left);
    let (main_el, other_el) = elements(left);
    if p.defeaters != c.defeaters {
        return Err(mismatch(rule, SchemaElement::Defeaters, "must be unchanged"));
    }
    if p_other != c_other {
        return Err(mismatch(rule, other_el, "must be unchanged"));
    }
    let candidates = c_main.iter().filter(|f| f.as_declarative().and_then(shape).is_some());
    any_principal(rule, candidates, |f| {
        let actives = shape(f.as_declarative().expect("filtered")).expect("filtered");
        side_ok(c_main, &[(p_main, ds(&actives))], Some(f)).map_err(|e| mismatch(rule, main_el, e))
    })
}

fn binary(
    rule: RuleId,
    p1: &Sequent,
    p2: &Sequent,
    c: &Sequent,
    left: bool,
    shape: Binary,
) -> Result<(), InstanceError> {
    let (c_main, c_other) = sides(c, left);
    let (p1_main, p1_other) = sides(p1, left);
    let (p2_main, p2_other) = sides(p2, left);
    let (main_el, other_el) = elements(left);
    if c.defeaters != p1.defeaters.union(&p2.defeaters) {
        return Err(mismatch(
            rule,
            SchemaElement::Defeaters,
            "must be the union of the premises'",
        ));
    }
    side_ok(c_other, &[(p1_other, vec![]), (p2_other, vec![])], None).map_err(|e| mismatch(rule, other_el, e))?;
    let candidates = c_main.iter().filter(|f| f.as_declarative().and_then(shape).is_some());
    any_principal(rule, candidates, |f| {
        let (a, b) = shape(f.as_declarative().expect("filtered")).expect("filtered");
        side_ok(c_main, &[(p1_main, vec![d(&a)]), (p2_main, vec![d(&b)])], Some(f))
            .map_err(|e| mismatch(rule, main_el, e))
    })
}

fn weakening(rule: RuleId, p: &Sequent, c: &Sequent) -> Result<(), InstanceError> {
    let left = rule == RuleId::LW;
    let (c_main, c_other) = sides(c, left);
    let (p_main, p_other) = sides(p, left);
    let (main_el, other_el) = elements(left);
    if p.defeaters != c.defeaters {
        return Err(mismatch(rule, SchemaElement::Defeaters, "must be unchanged"));
    }
    if p_other != c_other {
        return Err(mismatch(rule, other_el, "must be unchanged"));
    }
    if !p_main.is_subset(c_main) || c_main.len() > p_main.len() + 1 {
        return Err(mismatch(rule, main_el, "must add at most one formula"));
    }
    Ok(())
}

fn with_answers(c: &DefeaterSet, q: &Question, rule: RuleId, premises: DefeaterSet) -> Result<(), InstanceError> {
    let expected = premises.union(&DefeaterSet::answer_singletons(q));
    if *c == expected {
        Ok(())
    } else {
        Err(mismatch(
            rule,
            SchemaElement::Defeaters,
            format!("expected {expected}, found {c}"),
        ))
    }
}

fn qr1(p: &Sequent, c: &Sequent) -> Result<(), InstanceError> {
    let rule = RuleId::QR1;
    if c.antecedent.iter().any(SForm::is_question) {
        return Err(mismatch(rule, SchemaElement::Proviso, "antecedent must be declarative"));
    }
    if p.antecedent != c.antecedent {
        return Err(mismatch(rule, SchemaElement::Antecedent, "must be unchanged"));
    }
    any_principal(rule, questions(&c.succedent).map(|(f, _)| f), |f| {
        let q = f.as_question().expect("question");
        side_ok(&c.succedent, &[(&p.succedent, ds(q.answers()))], Some(f))
            .map_err(|e| mismatch(rule, SchemaElement::Succedent, e))?;
        with_answers(&c.defeaters, q, rule, p.defeaters.clone())
    })
}

fn ql1(ps: &[&Sequent], c: &Sequent) -> Result<(), InstanceError> {
    let rule = RuleId::QL1;
    if c.succedent
        .iter()
        .chain(ps.iter().flat_map(|p| &p.succedent))
        .any(SForm::is_question)
    {
        return Err(mismatch(rule, SchemaElement::Proviso, "succedents must be declarative"));
    }
    let succ: BTreeSet<SForm> = ps.iter().flat_map(|p| p.succedent.iter().cloned()).collect();
    if succ != c.succedent {
        return Err(mismatch(
            rule,
            SchemaElement::Succedent,
            "must be the union of the premises'",
        ));
    }
    any_principal(rule, questions(&c.antecedent).map(|(f, _)| f), |f| {
        let q = f.as_question().expect("question");
        arity(rule, q.answers().len(), ps.len())?;
        let parts: Vec<(&BTreeSet<SForm>, Vec<SForm>)> = ps
            .iter()
            .zip(q.answers())
            .map(|(p, a)| (&p.antecedent, vec![d(a)]))
            .collect();
        side_ok(&c.antecedent, &parts, Some(f)).map_err(|e| mismatch(rule, SchemaElement::Antecedent, e))?;
        with_answers(&c.defeaters, q, rule, union_of(ps.iter().map(|p| &p.defeaters)))
    })
}

fn check_witness(rule: RuleId, w: &Witness, q: &Question, q2: &Question) -> Result<(), InstanceError> {
    let keys: BTreeSet<&DFormula> = w.keys().collect();
    let implied: BTreeSet<&DFormula> = q2.answers().iter().collect();
    if keys != implied {
        return Err(mismatch(
            rule,
            SchemaElement::Witness,
            "must map exactly the implied answers",
        ));
    }
    if let Some(v) = w.values().find(|v| !q.answers().contains(v)) {
        return Err(mismatch(
            rule,
            SchemaElement::Witness,
            format!("{v} is not an implying answer"),
        ));
    }
    Ok(())
}

fn two_questions(rule: RuleId, ps: &[&Sequent], c: &Sequent, witness: Option<&Witness>) -> Result<(), InstanceError> {
    let w = witness.ok_or_else(|| mismatch(rule, SchemaElement::Witness, "missing"))?;
    let pairs: Vec<(&SForm, &SForm)> = questions(&c.antecedent)
        .flat_map(|(f, _)| questions(&c.succedent).map(move |(g, _)| (f, g)))
        .collect();
    if pairs.is_empty() {
        return Err(mismatch(
            rule,
            SchemaElement::Principal,
            "needs a question on each side",
        ));
    }
    let mut first = None;
    for (f, g) in pairs {
        let q = f.as_question().expect("question");
        let q2 = g.as_question().expect("question");
        match two_questions_with(rule, ps, c, w, (f, q), (g, q2)) {
            Ok(()) => return Ok(()),
            Err(e) => {
                first.get_or_insert(e);
            }
        }
    }
    Err(first.expect("nonempty"))
}

fn two_questions_with(
    rule: RuleId,
    ps: &[&Sequent],
    c: &Sequent,
    w: &Witness,
    (f, q): (&SForm, &Question),
    (g, q2): (&SForm, &Question),
) -> Result<(), InstanceError> {
    check_witness(rule, w, q, q2)?;
    let m = q2.answers().len();
    let mut ant: Vec<(&BTreeSet<SForm>, Vec<SForm>)> = Vec::new();
    let mut succ: Vec<(&BTreeSet<SForm>, Vec<SForm>)> = Vec::new();
    let rest = if rule == RuleId::QR2 {
        arity(rule, m + 1, ps.len())?;
        ant.push((&ps[0].antecedent, vec![f.clone()]));
        succ.push((&ps[0].succedent, ds(q2.answers())));
        &ps[1..]
    } else {
        let n = q.answers().len();
        arity(rule, n + m, ps.len())?;
        for (p, a) in ps.iter().zip(q.answers()) {
            ant.push((&p.antecedent, vec![d(a)]));
            succ.push((&p.succedent, vec![g.clone()]));
        }
        &ps[n..]
    };
    for (p, b) in rest.iter().zip(q2.answers()) {
        ant.push((&p.antecedent, vec![d(b)]));
        succ.push((&p.succedent, vec![d(&w[b])]));
    }
    side_ok(&c.antecedent, &ant, Some(f)).map_err(|e| mismatch(rule, SchemaElement::Antecedent, e))?;
    side_ok(&c.succedent, &succ, Some(g)).map_err(|e| mismatch(rule, SchemaElement::Succedent, e))?;
    with_answers(&c.defeaters, q, rule, union_of(ps.iter().map(|p| &p.defeaters)))
}

fn cut(p1: &Sequent, p2: &Sequent, c: &Sequent) -> Result<(), InstanceError> {
    let rule = RuleId::Cut;
    if c.defeaters != p1.defeaters.union(&p2.defeaters) {
        return Err(mismatch(
            rule,
            SchemaElement::Defeaters,
            "must be the union of the premises'",
        ));
    }
    let candidates = p1.succedent.iter().filter(|f| p2.antecedent.contains(*f));
    any_principal(rule, candidates, |f| {
        side_ok(
            &c.antecedent,
            &[(&p1.antecedent, vec![]), (&p2.antecedent, vec![f.clone()])],
            None,
        )
        .map_err(|e| mismatch(rule, SchemaElement::Antecedent, e))?;
        side_ok(
            &c.succedent,
            &[(&p1.succedent, vec![f.clone()]), (&p2.succedent, vec![])],
            None,
        )
        .map_err(|e| mismatch(rule, SchemaElement::Succedent, e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_dformula;
    use crate::sequent::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn strategy_assignment() -> DefeaterAssignment {
        "s : {r}\np : {t}\nq : {u, v}".parse().unwrap()
    }

    fn ok(rule: RuleId, premises: &[&str], conclusion: &str) -> Result<(), InstanceError> {
        let ps: Vec<Sequent> = premises.iter().map(|s| seq(s)).collect();
        check_instance(rule, &ps, &seq(conclusion), None, &strategy_assignment())
    }

    #[test]
    fn axioms() {
        assert!(ok(RuleId::Ax1, &[], "q |- [{u, v}] q").is_ok());
        assert!(ok(RuleId::Ax1, &[], "q |- [] q").is_ok());
        assert!(ok(RuleId::Ax1, &[], "q |- [{t}] q").is_err());
        assert!(ok(RuleId::Ax2, &[], "~p |- [{t}] ~p").is_ok());
        assert!(ok(RuleId::Ax3, &[], "|- [{r}] s, ~s").is_ok());
        assert!(ok(RuleId::Ax4, &[], "s, ~s |- ").is_ok());
        assert!(ok(RuleId::Ax4, &[], "s, ~s |- [{r}]").is_err());
        assert!(ok(RuleId::Ax1, &[], "p & q |- p & q").is_err());
        assert!(ok(RuleId::Ax3, &[], "|- p, ~q").is_err());
    }

    #[test]
    fn exact_axiom_mode() {
        let a = strategy_assignment();
        let strict = Checker::new(&a).exact_axioms(true);
        assert!(strict
            .check_instance(RuleId::Ax1, &[], &seq("q |- [] q"), None)
            .is_err());
        assert!(strict
            .check_instance(RuleId::Ax1, &[], &seq("q |- [{u, v}] q"), None)
            .is_ok());
    }

    #[test]
    fn or_left_from_strategy_proof() {
        assert!(ok(RuleId::OrL, &["s, ~s |- ", "p |- [{t}] p"], "~s | p, s |- [{t}] p").is_ok());
        assert!(ok(RuleId::OrL, &["p |- [{t}] p", "s, ~s |- "], "~s | p, s |- [{t}] p").is_ok());
        assert!(ok(RuleId::OrL, &["s, ~s |- ", "p |- [{t}] p"], "~s | p, s |- [] p").is_err());
    }

    #[test]
    fn and_right_needs_union() {
        assert!(ok(RuleId::AndR, &["p |- [{t}] p", "r |- r"], "p, r |- [{t}] p & r").is_ok());
        let e = ok(RuleId::AndR, &["p |- [{t}] p", "r |- r"], "p, r |- [] p & r").unwrap_err();
        assert!(matches!(
            e,
            InstanceError::Mismatch {
                element: SchemaElement::Defeaters,
                ..
            }
        ));
    }

    #[test]
    fn unary_rules() {
        assert!(ok(RuleId::AndL, &["p, q |- p & q"], "p & q |- p & q").is_ok());
        assert!(ok(RuleId::AndL, &["p, q |- p"], "p & q, p |- p").is_ok());
        assert!(ok(RuleId::AndL, &["p, q |- p"], "p & q |- p, q").is_err());
        assert!(ok(RuleId::OrR, &["p |- p, q"], "p |- p | q").is_ok());
        assert!(ok(RuleId::NegNegL, &["p |- p"], "~~p |- p").is_ok());
        assert!(ok(RuleId::NegNegR, &["p |- p"], "p |- ~~p").is_ok());
        assert!(ok(RuleId::NegAndR, &["|- ~p, ~q, p"], "|- ~(p & q), p").is_ok());
        assert!(ok(RuleId::NegOrL, &["~p, ~q |- ~p"], "~(p | q) |- ~p").is_ok());
    }

    #[test]
    fn weakening_and_de() {
        assert!(ok(RuleId::LW, &["|- [{r}] s, ~s"], "~s | p |- [{r}] s, ~s").is_ok());
        assert!(ok(RuleId::LW, &["p |- p"], "p |- p").is_ok());
        assert!(ok(RuleId::LW, &["p |- p"], "p, q, r |- p").is_err());
        assert!(ok(RuleId::RW, &["p |- p"], "p |- p, q").is_ok());
        assert!(ok(RuleId::DE, &["p |- p"], "p |- [{q}, {r}] p").is_ok());
        assert!(ok(RuleId::DE, &["p |- [{q}] p"], "p |- [{r}] p").is_err());
    }

    #[test]
    fn qr1_requires_answer_singletons() {
        assert!(ok(RuleId::QR1, &["p | ~p |- p, ~p"], "p | ~p |- [{p}, {~p}] ?{p, ~p}").is_ok());
        let e = ok(RuleId::QR1, &["p | ~p |- p, ~p"], "p | ~p |- [{p}] ?{p, ~p}").unwrap_err();
        assert!(matches!(
            e,
            InstanceError::Mismatch {
                element: SchemaElement::Defeaters,
                ..
            }
        ));
        assert!(ok(RuleId::QR1, &["?{p, q} |- p, q"], "?{p, q} |- [{p}, {q}] ?{p, q}").is_err());
    }

    #[test]
    fn ql1() {
        assert!(ok(RuleId::QL1, &["p |- p, q", "q |- p, q"], "?{p, q} |- [{p}, {q}] p, q").is_ok());
        assert!(ok(RuleId::QL1, &["q |- p, q", "p |- p, q"], "?{p, q} |- [{p}, {q}] p, q").is_ok());
        assert!(ok(RuleId::QL1, &["p |- p"], "?{p, q} |- [{p}, {q}] p").is_err());
    }

    #[test]
    fn qr2_from_strategy_proof() {
        let a = strategy_assignment();
        let mut w = Witness::new();
        w.insert(parse_dformula("s").unwrap(), parse_dformula("p").unwrap());
        w.insert(parse_dformula("~s").unwrap(), parse_dformula("q").unwrap());
        let ps = [
            seq("~s | p, ?{p, q} |- [{r}] s, ~s"),
            seq("~s | p, s |- [{t}] p"),
            seq("s | q, ~s |- [{u, v}] q"),
        ];
        let c = seq("?{p, q}, ~s | p, s | q |- [{r}, {t}, {u, v}, {p}, {q}] ?{s, ~s}");
        assert_eq!(check_instance(RuleId::QR2, &ps, &c, Some(&w), &a), Ok(()));
        let rev = [ps[2].clone(), ps[0].clone(), ps[1].clone()];
        assert_eq!(check_instance(RuleId::QR2, &rev, &c, Some(&w), &a), Ok(()));
        assert!(check_instance(RuleId::QR2, &ps, &c, None, &a).is_err());
        let mut bad = w.clone();
        bad.insert(parse_dformula("~s").unwrap(), parse_dformula("p").unwrap());
        assert!(check_instance(RuleId::QR2, &ps, &c, Some(&bad), &a).is_err());
    }

    #[test]
    fn ql2() {
        let a = DefeaterAssignment::new();
        let mut w = Witness::new();
        w.insert(parse_dformula("p").unwrap(), parse_dformula("p").unwrap());
        w.insert(parse_dformula("q").unwrap(), parse_dformula("q").unwrap());
        let q = "?{p, q}";
        let ps = [
            seq(&format!("p |- [{{p}}, {{q}}] {q}")),
            seq(&format!("q |- [{{p}}, {{q}}] {q}")),
            seq("p |- p"),
            seq("q |- q"),
        ];
        let c = seq(&format!("{q} |- [{{p}}, {{q}}] {q}"));
        assert_eq!(check_instance(RuleId::QL2, &ps, &c, Some(&w), &a), Ok(()));
    }

    #[test]
    fn cut() {
        assert!(ok(RuleId::Cut, &["p |- p | q", "p | q |- [{r}] q, p"], "p |- [{r}] q, p").is_ok());
        assert!(ok(RuleId::Cut, &["p |- p | q", "p | q |- q, p"], "p |- [{r}] q, p").is_err());
    }

    #[test]
    fn witness_on_wrong_rule() {
        let a = DefeaterAssignment::new();
        let w = Witness::new();
        assert!(check_instance(RuleId::Ax1, &[], &seq("p |- p"), Some(&w), &a).is_err());
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            ok(RuleId::AndR, &["p |- p"], "p |- p & p"),
            Err(InstanceError::Arity {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn tree_classification() {
        let a = DefeaterAssignment::new();
        let t = ProofTree::leaf(seq("p |- p"), RuleId::Ax1);
        assert_eq!(check_tree(&t, &a), Classification::Proof);
        let bad = ProofTree::node(
            seq("p |- [{q}, {r}] p"),
            RuleId::DE,
            vec![ProofTree::leaf(seq("p |- [{r}] p"), RuleId::Ax1)],
        );
        assert!(matches!(check_tree(&bad, &a), Classification::NotADerivation { ref path, .. } if path == &vec![0]));
    }
}
