//! Helpers shared by the integration suites: a truth-table oracle written
//! independently of the library's semantics module, formula pools, and
//! proptest strategies.
#![allow(dead_code)]

use std::collections::BTreeSet;

use erotetic::formula::{DFormula, Question, SForm};
use erotetic::sequent::{DefeaterMember, DefeaterSet, Sequent};
use proptest::prelude::*;

/// Classical semantics by brute-force valuation enumeration.
pub mod oracle {
    use super::*;

    fn collect_atoms<'a>(f: &'a DFormula, out: &mut Vec<&'a str>) {
        match f {
            DFormula::Atom(a) => {
                if !out.contains(&a.as_str()) {
                    out.push(a.as_str());
                }
            }
            DFormula::Neg(x) => collect_atoms(x, out),
            DFormula::And(x, y) | DFormula::Or(x, y) => {
                collect_atoms(x, out);
                collect_atoms(y, out);
            }
        }
    }

    fn truth(f: &DFormula, atoms: &[&str], row: u32) -> bool {
        match f {
            DFormula::Atom(a) => {
                let i = atoms.iter().position(|x| *x == a.as_str()).expect("atom indexed");
                row >> i & 1 == 1
            }
            DFormula::Neg(x) => !truth(x, atoms, row),
            DFormula::And(x, y) => truth(x, atoms, row) && truth(y, atoms, row),
            DFormula::Or(x, y) => truth(x, atoms, row) || truth(y, atoms, row),
        }
    }

    /// Every row making all of `xs` true makes some member of `ys` true.
    pub fn entails<'a>(xs: impl IntoIterator<Item = &'a DFormula>, ys: impl IntoIterator<Item = &'a DFormula>) -> bool {
        let xs: Vec<&DFormula> = xs.into_iter().collect();
        let ys: Vec<&DFormula> = ys.into_iter().collect();
        let mut atoms = Vec::new();
        for f in xs.iter().chain(&ys) {
            collect_atoms(f, &mut atoms);
        }
        assert!(atoms.len() <= 20, "oracle limited to 20 atoms");
        (0..1u32 << atoms.len())
            .all(|row| !xs.iter().all(|f| truth(f, &atoms, row)) || ys.iter().any(|f| truth(f, &atoms, row)))
    }

    pub fn satisfiable<'a>(xs: impl IntoIterator<Item = &'a DFormula>) -> bool {
        !entails(xs, [])
    }

    /// Questions replaced by the disjunction of their answers, written out
    /// here rather than taken from the library.
    pub fn translate(f: &SForm) -> DFormula {
        match f {
            SForm::D(d) => d.clone(),
            SForm::Q(q) => {
                let mut it = q.answers().iter().cloned();
                let first = it.next().expect("questions have answers");
                it.fold(first, |acc, a| DFormula::Or(Box::new(acc), Box::new(a)))
            }
        }
    }

    pub fn translate_all(side: &BTreeSet<SForm>) -> Vec<DFormula> {
        side.iter().map(translate).collect()
    }

    pub fn defeated(s: &Sequent) -> bool {
        let ant = translate_all(&s.antecedent);
        s.defeaters.iter().any(|m| entails(&ant, m.formulas()))
    }

    pub fn valid(s: &Sequent) -> bool {
        entails(&translate_all(&s.antecedent), &translate_all(&s.succedent))
    }

    pub fn evokes(xs: &[DFormula], q: &Question) -> bool {
        entails(xs, q.answers()) && q.answers().iter().all(|a| !entails(xs, [a]))
    }

    pub fn implies_sr(xs: &[DFormula], q: &Question, q2: &Question) -> bool {
        let with = |f: &DFormula| -> Vec<DFormula> { xs.iter().cloned().chain([f.clone()]).collect() };
        let i = q.answers().iter().all(|a| entails(&with(a), q2.answers()));
        let ii = q2
            .answers()
            .iter()
            .all(|b| q.answers().iter().any(|a| entails(&with(b), [a])));
        let iii = q.answers().iter().all(|a| !entails(xs, [a]));
        i && ii && iii
    }
}

/// Formulas over `atoms` built in `depth` rounds; each round adds the
/// negations and the conjunctions and disjunctions of distinct pairs of the
/// previous round's pool, pairs taken once in canonical order.
pub fn pool(atoms: &[&str], depth: usize) -> Vec<DFormula> {
    let mut cur: BTreeSet<DFormula> = atoms.iter().map(|a| DFormula::atom(a)).collect();
    for _ in 0..depth {
        let prev: Vec<DFormula> = cur.iter().cloned().collect();
        for (i, a) in prev.iter().enumerate() {
            cur.insert(a.clone().neg());
            for b in &prev[i + 1..] {
                cur.insert(a.clone().and(b.clone()));
                cur.insert(a.clone().or(b.clone()));
            }
        }
    }
    cur.into_iter().collect()
}

/// All subsets of size at most `k`, smallest first.
pub fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<(usize, Vec<T>)> = vec![(0, vec![])];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, set) in &frontier {
            for (i, item) in items.iter().enumerate().skip(*start) {
                let mut s = set.clone();
                s.push(item.clone());
                out.push(s.clone());
                next.push((i + 1, s));
            }
        }
        frontier = next;
    }
    out
}

/// Every two-answer question over distinct pool formulas.
pub fn questions(pool: &[DFormula]) -> Vec<Question> {
    let mut out = Vec::new();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i + 1..] {
            out.push(Question::new(vec![a.clone(), b.clone()]).expect("distinct answers"));
        }
    }
    out
}

pub fn singletons<'a>(fs: impl IntoIterator<Item = &'a DFormula>) -> DefeaterSet {
    fs.into_iter().cloned().map(DefeaterMember::singleton).collect()
}

pub fn dside(fs: &[DFormula]) -> BTreeSet<SForm> {
    fs.iter().cloned().map(SForm::D).collect()
}

pub fn arb_atom(atoms: &'static [&'static str]) -> impl Strategy<Value = DFormula> {
    proptest::sample::select(atoms).prop_map(DFormula::atom)
}

pub fn arb_dformula(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = DFormula> {
    arb_atom(atoms).prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(DFormula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
        ]
    })
}

pub fn arb_question(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Question> {
    proptest::collection::vec(arb_dformula(atoms, depth), 2..4)
        .prop_filter_map("equiform answers", |v| Question::new(v).ok())
}

pub fn arb_sform(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = SForm> {
    prop_oneof![
        3 => arb_dformula(atoms, depth).prop_map(SForm::D),
        1 => arb_question(atoms, depth).prop_map(SForm::Q),
    ]
}

pub fn arb_member(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = DefeaterMember> {
    proptest::collection::btree_set(arb_dformula(atoms, depth), 1..3)
        .prop_map(|s| DefeaterMember::new(s).expect("nonempty"))
}

pub fn arb_defeaters(atoms: &'static [&'static str], depth: u32, max: usize) -> impl Strategy<Value = DefeaterSet> {
    proptest::collection::btree_set(arb_member(atoms, depth), 0..=max).prop_map(|s| s.into_iter().collect())
}

pub fn arb_sequent(
    atoms: &'static [&'static str],
    depth: u32,
    side: usize,
    erotetic: bool,
) -> impl Strategy<Value = Sequent> {
    let f = if erotetic {
        arb_sform(atoms, depth).boxed()
    } else {
        arb_dformula(atoms, depth).prop_map(SForm::D).boxed()
    };
    (
        proptest::collection::btree_set(f.clone(), 0..=side),
        proptest::collection::btree_set(f, 0..=side),
        arb_defeaters(atoms, 1, 3),
    )
        .prop_map(|(a, s, d)| Sequent::new(a, s, d))
}
