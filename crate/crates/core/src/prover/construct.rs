//! Direct proof construction for the three recognised shapes.
//!
//! Declarative derivations are built backwards from a minimal valid core
//! with every defeater set empty; the requested defeaters are restored at
//! the root by one `DE` step per member. Erotetic proofs wrap such
//! derivations in `QR1`, `QL1` and `QR2`.

use std::collections::BTreeSet;

use super::{prove_general, NotDeclarative, SearchBounds, Verdict};
use crate::calculus::{binary_shape, unary_shape};
use crate::calculus::{check_tree, ProofTree, RuleId, Witness};
use crate::formula::{atoms, DFormula, Question, SForm};
use crate::semantics::{declarativize, entails, implies_sr, implying_answer};
use crate::sequent::{DefeaterAssignment, DefeaterSet, Sequent};

type Side = BTreeSet<SForm>;

fn valid(ant: &Side, succ: &Side) -> bool {
    entails(&declarativize(ant), &declarativize(succ))
}

/// Drops formulas, antecedent first and each side in order, while the
/// sequent stays valid. Kept formulas stay.
fn minimize(mut ant: Side, mut succ: Side, keep_ant: &[&SForm], keep_succ: &[&SForm]) -> (Side, Side) {
    for f in ant.clone() {
        if keep_ant.contains(&&f) {
            continue;
        }
        ant.remove(&f);
        if !valid(&ant, &succ) {
            ant.insert(f);
        }
    }
    for f in succ.clone() {
        if keep_succ.contains(&&f) {
            continue;
        }
        succ.remove(&f);
        if !valid(&ant, &succ) {
            succ.insert(f);
        }
    }
    (ant, succ)
}

fn sequent(ant: Side, succ: Side, defeaters: DefeaterSet) -> Sequent {
    Sequent {
        antecedent: ant,
        succedent: succ,
        defeaters,
    }
}

/// Adds the missing antecedent formulas by `LW`, then the missing succedent
/// formulas by `RW`, one per step.
fn weaken_to(mut t: ProofTree, ant: &Side, succ: &Side) -> ProofTree {
    for f in ant {
        if !t.sequent.antecedent.contains(f) {
            let mut s = t.sequent.clone();
            s.antecedent.insert(f.clone());
            t = ProofTree::node(s, RuleId::LW, vec![t]);
        }
    }
    for f in succ {
        if !t.sequent.succedent.contains(f) {
            let mut s = t.sequent.clone();
            s.succedent.insert(f.clone());
            t = ProofTree::node(s, RuleId::RW, vec![t]);
        }
    }
    t
}

/// Adds the missing members of `target` by `DE`, one per step.
fn de_chain(mut t: ProofTree, target: &DefeaterSet) -> ProofTree {
    for m in target {
        if !t.sequent.defeaters.contains(m) {
            let mut defs = t.sequent.defeaters.clone();
            defs.insert(m.clone());
            let s = t.sequent.with_defeaters(defs);
            t = ProofTree::node(s, RuleId::DE, vec![t]);
        }
    }
    t
}

/// A derivation of exactly `ant |- [] succ`, which must be valid and
/// declarative.
fn derive(ant: &Side, succ: &Side) -> ProofTree {
    let (a, s) = minimize(ant.clone(), succ.clone(), &[], &[]);
    weaken_to(derive_core(a, s), ant, succ)
}

/// Derives a minimal valid sequent, or a subsequent of it.
fn derive_core(a: Side, s: Side) -> ProofTree {
    for rule in [
        RuleId::AndL,
        RuleId::NegNegL,
        RuleId::NegOrL,
        RuleId::OrR,
        RuleId::NegNegR,
        RuleId::NegAndR,
    ] {
        let (left, shape) = unary_shape(rule).expect("unary rule");
        let side = if left { &a } else { &s };
        let Some((f, actives)) = side
            .iter()
            .find_map(|f| f.as_declarative().and_then(shape).map(|x| (f.clone(), x)))
        else {
            continue;
        };
        let (mut pa, mut ps) = (a.clone(), s.clone());
        let main = if left { &mut pa } else { &mut ps };
        main.remove(&f);
        main.extend(actives.into_iter().map(SForm::D));
        let premise = derive(&pa, &ps);
        return ProofTree::node(sequent(a, s, DefeaterSet::new()), rule, vec![premise]);
    }
    for rule in [RuleId::OrL, RuleId::NegAndL, RuleId::AndR, RuleId::NegOrR] {
        let (left, shape) = binary_shape(rule).expect("binary rule");
        let side = if left { &a } else { &s };
        let Some((f, (x, y))) = side
            .iter()
            .find_map(|f| f.as_declarative().and_then(shape).map(|xy| (f.clone(), xy)))
        else {
            continue;
        };
        let branch = |active: DFormula| -> (ProofTree, SForm) {
            let active = SForm::D(active);
            let (mut pa, mut ps) = (a.clone(), s.clone());
            let main = if left { &mut pa } else { &mut ps };
            main.remove(&f);
            main.insert(active.clone());
            let (ka, ks): (&[&SForm], &[&SForm]) = if left { (&[&active], &[]) } else { (&[], &[&active]) };
            let (pa, ps) = minimize(pa, ps, ka, ks);
            (derive(&pa, &ps), active)
        };
        let (t1, x) = branch(x);
        let (t2, y) = branch(y);
        let (s1, s2) = (&t1.sequent, &t2.sequent);
        let (mut ca, mut cs): (Side, Side);
        if left {
            ca = s1
                .antecedent
                .iter()
                .filter(|g| **g != x)
                .chain(s2.antecedent.iter().filter(|g| **g != y))
                .cloned()
                .collect();
            ca.insert(f);
            cs = s1.succedent.union(&s2.succedent).cloned().collect();
        } else {
            ca = s1.antecedent.union(&s2.antecedent).cloned().collect();
            cs = s1
                .succedent
                .iter()
                .filter(|g| **g != x)
                .chain(s2.succedent.iter().filter(|g| **g != y))
                .cloned()
                .collect();
            cs.insert(f);
        }
        return ProofTree::node(sequent(ca, cs, DefeaterSet::new()), rule, vec![t1, t2]);
    }
    let rule = axiom_for(&a, &s).unwrap_or_else(|| panic!("no axiom for minimal sequent {a:?} |- {s:?}"));
    ProofTree::leaf(sequent(a, s, DefeaterSet::new()), rule)
}

fn axiom_for(a: &Side, s: &Side) -> Option<RuleId> {
    let lits = |side: &Side| -> Option<Vec<DFormula>> {
        side.iter()
            .map(|f| f.as_declarative().filter(|d| d.is_literal()).cloned())
            .collect()
    };
    let (la, ls) = (lits(a)?, lits(s)?);
    let complementary =
        |v: &[DFormula]| v.len() == 2 && v[0].clone().neg() == v[1] || v.len() == 2 && v[1].clone().neg() == v[0];
    match (la.as_slice(), ls.as_slice()) {
        ([x], [y]) if x == y && x.as_atom().is_some() => Some(RuleId::Ax1),
        ([x], [y]) if x == y => Some(RuleId::Ax2),
        ([], v) if complementary(v) => Some(RuleId::Ax3),
        (v, []) if complementary(v) => Some(RuleId::Ax4),
        _ => None,
    }
}

/// Re-labels axiom leaves with their full assigned defeater sets and
/// propagates the change downwards. Members introduced by a rule itself are
/// kept.
fn instantiate(t: &ProofTree, assignment: &DefeaterAssignment) -> ProofTree {
    let premises: Vec<ProofTree> = t.premises.iter().map(|p| instantiate(p, assignment)).collect();
    let defeaters = match t.rule {
        RuleId::Ax1 | RuleId::Ax2 | RuleId::Ax3 => {
            let atom = atoms(&t.sequent.succedent)
                .into_iter()
                .next()
                .expect("axioms mention an atom");
            assignment.get(&atom).clone()
        }
        RuleId::Ax4 => DefeaterSet::new(),
        _ => {
            let before: DefeaterSet = t
                .premises
                .iter()
                .fold(DefeaterSet::new(), |acc, p| acc.union(&p.sequent.defeaters));
            let added = t.sequent.defeaters.difference(&before);
            premises.iter().fold(added, |acc, p| acc.union(&p.sequent.defeaters))
        }
    };
    ProofTree {
        sequent: t.sequent.with_defeaters(defeaters),
        rule: t.rule,
        witness: t.witness.clone(),
        premises,
    }
}

/// Completes an erotetic proof for `target`. Prefers axioms carrying their
/// assigned defeaters when that still yields a proof below the target;
/// otherwise keeps the empty axiom sets.
fn finish(tree: ProofTree, target: &Sequent, assignment: &DefeaterAssignment) -> Verdict {
    if !assignment.is_empty() {
        let rich = instantiate(&tree, assignment);
        if rich.sequent.defeaters.is_subset(&target.defeaters) && check_tree(&rich, assignment).is_proof() {
            return Verdict::Provable(de_chain(rich, &target.defeaters));
        }
    }
    let t = de_chain(tree, &target.defeaters);
    debug_assert!(
        check_tree(&t, assignment).is_proof(),
        "constructed tree fails to check:\n{}",
        t.render()
    );
    Verdict::Provable(t)
}

fn dside<'a, I: IntoIterator<Item = &'a DFormula>>(fs: I) -> Side {
    fs.into_iter().cloned().map(SForm::D).collect()
}

/// A derivation of the valid declarative sequent `ant |- [] succ` in which
/// every defeater set is empty, or `None` if the sequent is not valid.
pub fn derive_declarative(ant: &BTreeSet<DFormula>, succ: &BTreeSet<DFormula>) -> Option<ProofTree> {
    let (a, s) = (dside(ant), dside(succ));
    valid(&a, &s).then(|| derive(&a, &s))
}

/// Decides a question-free sequent. A proof exists exactly when the
/// antecedent entails the succedent and no defeater member.
pub fn prove_declarative(s: &Sequent, assignment: &DefeaterAssignment) -> Result<Verdict, NotDeclarative> {
    if !s.is_declarative() {
        return Err(NotDeclarative);
    }
    if let Some(m) = s.defeat_witness() {
        return Ok(Verdict::Defeated(m.clone()));
    }
    if !s.is_valid() {
        return Ok(Verdict::NotDerivable);
    }
    let t = de_chain(derive(&s.antecedent, &s.succedent), &s.defeaters);
    debug_assert!(check_tree(&t, assignment).is_proof());
    Ok(Verdict::Provable(t))
}

/// Decides `xs |- [extra ∪ answers of q] q`.
pub fn prove_evocation(xs: &[DFormula], q: &Question, extra: &DefeaterSet, assignment: &DefeaterAssignment) -> Verdict {
    let singles = DefeaterSet::answer_singletons(q);
    let ant = dside(xs);
    let target = sequent(ant.clone(), Side::from([SForm::Q(q.clone())]), extra.union(&singles));
    if let Some(m) = target.defeat_witness() {
        return Verdict::Defeated(m.clone());
    }
    if !entails(xs, q.answers()) {
        return Verdict::NotDerivable;
    }
    let inner = derive(&ant, &dside(q.answers()));
    let defs = inner.sequent.defeaters.union(&singles);
    let tree = ProofTree::node(sequent(ant, target.succedent.clone(), defs), RuleId::QR1, vec![inner]);
    finish(tree, &target, assignment)
}

/// Decides `xs, q |- [extra ∪ answers of q] q2`.
///
/// When the formulas and `q` strongly regularly imply `q2` the proof is
/// assembled directly around `QR2`. Otherwise the sequent may still be
/// provable by a detour, so the generic search decides it.
pub fn prove_eimp(
    xs: &[DFormula],
    q: &Question,
    q2: &Question,
    extra: &DefeaterSet,
    assignment: &DefeaterAssignment,
) -> Verdict {
    let singles = DefeaterSet::answer_singletons(q);
    let qf = SForm::Q(q.clone());
    let q2f = SForm::Q(q2.clone());
    let x = dside(xs);
    let mut ant = x.clone();
    ant.insert(qf.clone());
    let target = sequent(ant.clone(), Side::from([q2f.clone()]), extra.union(&singles));
    if let Some(m) = target.defeat_witness() {
        return Verdict::Defeated(m.clone());
    }
    if !implies_sr(xs, q, q2) {
        return prove_general(&target, assignment, &SearchBounds::default());
    }

    let bs = dside(q2.answers());
    let keep_bs: Vec<&SForm> = bs.iter().collect();
    let (core, _) = minimize(ant.clone(), bs.clone(), &[&qf], &keep_bs);
    let mut core_x = core.clone();
    core_x.remove(&qf);
    let left = if valid(&core_x, &bs) {
        weaken_to(derive(&core_x, &bs), &core, &bs)
    } else {
        let branches: Vec<ProofTree> = q
            .answers()
            .iter()
            .map(|a| {
                let a = SForm::D(a.clone());
                let mut side = core_x.clone();
                side.insert(a.clone());
                let (pa, ps) = minimize(side, bs.clone(), &[&a], &[]);
                derive(&pa, &ps)
            })
            .collect();
        let mut ca: Side = branches
            .iter()
            .zip(q.answers())
            .flat_map(|(t, a)| {
                t.sequent
                    .antecedent
                    .iter()
                    .filter(move |g| g.as_declarative() != Some(a))
            })
            .cloned()
            .collect();
        ca.insert(qf.clone());
        let cs: Side = branches
            .iter()
            .flat_map(|t| t.sequent.succedent.iter().cloned())
            .collect();
        let ql1 = ProofTree::node(sequent(ca, cs, singles.clone()), RuleId::QL1, branches);
        weaken_to(ql1, &core, &bs)
    };

    let mut witness = Witness::new();
    let mut rights = Vec::new();
    for b in q2.answers() {
        let a = implying_answer(xs, q, b).expect("clause (ii) holds");
        witness.insert(b.clone(), a.clone());
        let (bf, af) = (SForm::D(b.clone()), SForm::D(a.clone()));
        let mut side = x.clone();
        side.insert(bf.clone());
        let (pa, ps) = minimize(side, Side::from([af.clone()]), &[&bf], &[&af]);
        rights.push(derive(&pa, &ps));
    }

    let mut ca: Side = left.sequent.antecedent.clone();
    for (t, b) in rights.iter().zip(q2.answers()) {
        ca.extend(
            t.sequent
                .antecedent
                .iter()
                .filter(|g| g.as_declarative() != Some(b))
                .cloned(),
        );
    }
    let defs = rights.iter().fold(left.sequent.defeaters.union(&singles), |acc, t| {
        acc.union(&t.sequent.defeaters)
    });
    let mut premises = vec![left];
    premises.extend(rights);
    let qr2 =
        ProofTree::node(sequent(ca, Side::from([q2f.clone()]), defs), RuleId::QR2, premises).with_witness(witness);
    finish(weaken_to(qr2, &ant, &Side::from([q2f])), &target, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Classification;
    use crate::formula::parse_dformula;
    use crate::sequent::{parse_sequent, DefeaterMember};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn d(s: &str) -> DFormula {
        parse_dformula(s).unwrap()
    }

    fn rules(t: &ProofTree) -> Vec<String> {
        t.nodes().iter().map(|(_, n)| n.rule.to_string()).collect()
    }

    #[test]
    fn normalized_declarative_shape() {
        let none = DefeaterAssignment::new();
        let s = seq("p | q, r |- [{t}, {p}, {s}, {q}] p & r, q");
        let Ok(Verdict::Provable(t)) = prove_declarative(&s, &none) else {
            panic!("expected a proof");
        };
        assert_eq!(t.sequent, s);
        assert_eq!(rules(&t), ["DE", "DE", "DE", "DE", "OrL", "AndR", "Ax1", "Ax1", "Ax1"]);
        let or_l = t.get(&[0, 0, 0, 0]).unwrap();
        assert_eq!(or_l.sequent, seq("p | q, r |- p & r, q"));
        assert_eq!(or_l.premises[0].premises[0].sequent, seq("p |- p"));
        assert_eq!(or_l.premises[0].premises[1].sequent, seq("r |- r"));
        assert_eq!(or_l.premises[1].sequent, seq("q |- q"));
    }

    #[test]
    fn declarative_verdicts() {
        let none = DefeaterAssignment::new();
        let v = |s: &str| prove_declarative(&seq(s), &none).unwrap();
        assert_eq!(rules(v("p, ~p |- ").proof().unwrap()), ["Ax4"]);
        assert_eq!(
            v("p, ~p |- [{r}] q"),
            Verdict::Defeated(DefeaterMember::singleton(d("r")))
        );
        assert_eq!(v("p |- [] q"), Verdict::NotDerivable);
        assert!(prove_declarative(&seq("p |- ?{p, q}"), &none).is_err());
    }

    #[test]
    fn every_connective_is_decomposed() {
        let none = DefeaterAssignment::new();
        for s in [
            "~(p & q) |- ~p, ~q",
            "~~p |- p",
            "p |- ~~p",
            "~(p | q) |- ~p",
            "~p, ~q |- ~(p | q)",
            "|- ~(p & ~p)",
            "p & (q | r) |- p & q | p & r",
            "|- p | ~p",
        ] {
            let v = prove_declarative(&seq(s), &none).unwrap();
            let t = v.proof().unwrap_or_else(|| panic!("{s}: {v}"));
            assert_eq!(check_tree(t, &none), Classification::Proof, "{s}");
        }
    }

    #[test]
    fn evocation_examples() {
        let none = DefeaterAssignment::new();
        let q: Question = "?{p, ~p}".parse().unwrap();
        let v = prove_evocation(&[d("p | ~p")], &q, &DefeaterSet::new(), &none);
        assert_eq!(v.proof().unwrap().sequent, seq("p | ~p |- [{p}, {~p}] ?{p, ~p}"));
        let v = prove_evocation(&[], &q, &DefeaterSet::new(), &none);
        assert_eq!(rules(v.proof().unwrap()), ["QR1", "Ax3"]);
        let pq: Question = "?{p, q}".parse().unwrap();
        assert_eq!(
            prove_evocation(&[d("p")], &pq, &DefeaterSet::new(), &none),
            Verdict::Defeated(DefeaterMember::singleton(d("p")))
        );
        assert_eq!(
            prove_evocation(&[d("r")], &pq, &DefeaterSet::new(), &none),
            Verdict::NotDerivable
        );
    }

    #[test]
    fn strategy_end_sequent() {
        let a: DefeaterAssignment = "s : {r}\np : {t}\nq : {u, v}".parse().unwrap();
        let extra: DefeaterSet = "[{r}, {t}, {u, v}]".parse().unwrap();
        let v = prove_eimp(
            &[d("~s | p"), d("s | q")],
            &"?{p, q}".parse().unwrap(),
            &"?{s, ~s}".parse().unwrap(),
            &extra,
            &a,
        );
        let t = v.proof().expect("provable");
        assert_eq!(
            t.sequent,
            seq("?{p, q}, ~s | p, s | q |- [{r}, {t}, {u, v}, {p}, {q}] ?{s, ~s}")
        );
        assert_eq!(t.rule, RuleId::QR2);
        assert_eq!(check_tree(t, &a), Classification::Proof);
        let leaves: Vec<String> = t.leaves().iter().map(|l| format!("{} {}", l.rule, l.sequent)).collect();
        assert_eq!(
            leaves,
            [
                "Ax3 |- [{r}] s, ~s",
                "Ax4 s, ~s |- []",
                "Ax1 p |- [{t}] p",
                "Ax4 s, ~s |- []",
                "Ax1 q |- [{u, v}] q"
            ]
        );
        assert_eq!(rules(t), ["QR2", "LW", "Ax3", "OrL", "Ax4", "Ax1", "OrL", "Ax4", "Ax1"]);
    }

    #[test]
    fn implication_examples() {
        let none = DefeaterAssignment::new();
        let q: Question = "?{q, r}".parse().unwrap();
        let q2: Question = "?{p, ~p}".parse().unwrap();
        let v = prove_eimp(&[d("~p | q"), d("p | r")], &q, &q2, &DefeaterSet::new(), &none);
        assert_eq!(
            v.proof().unwrap().sequent,
            seq("~p | q, p | r, ?{q, r} |- [{q}, {r}] ?{p, ~p}")
        );
        let v = prove_eimp(&[d("q"), d("~p | q"), d("p | r")], &q, &q2, &DefeaterSet::new(), &none);
        assert_eq!(v, Verdict::Defeated(DefeaterMember::singleton(d("q"))));
    }

    #[test]
    fn implying_question_needed_on_the_left() {
        // The left premise needs the answers of the implying question: QL1.
        let none = DefeaterAssignment::new();
        let q: Question = "?{p, q}".parse().unwrap();
        let q2: Question = "?{p, q | r}".parse().unwrap();
        let v = prove_eimp(&[d("~r")], &q, &q2, &DefeaterSet::new(), &none);
        let t = v.proof().unwrap_or_else(|| panic!("{v}"));
        assert!(rules(t).contains(&"QL1".to_string()), "{}", t.render());
        assert_eq!(check_tree(t, &none), Classification::Proof);
    }
}
