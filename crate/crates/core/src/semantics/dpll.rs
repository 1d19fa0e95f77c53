//! Entailment through a Tseitin encoding and a small DPLL solver.

use std::collections::HashMap;

use crate::formula::{Atom, DFormula};

type Lit = i32;

#[derive(Default)]
struct Cnf {
    vars: usize,
    atoms: HashMap<Atom, Lit>,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    fn fresh(&mut self) -> Lit {
        self.vars += 1;
        self.vars as Lit
    }

    /// A literal equivalent to `f`, adding defining clauses as needed.
    fn encode(&mut self, f: &DFormula) -> Lit {
        match f {
            DFormula::Atom(a) => {
                if let Some(&l) = self.atoms.get(a) {
                    return l;
                }
                let l = self.fresh();
                self.atoms.insert(a.clone(), l);
                l
            }
            DFormula::Neg(a) => -self.encode(a),
            DFormula::And(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.push(vec![-v, x]);
                self.clauses.push(vec![-v, y]);
                self.clauses.push(vec![v, -x, -y]);
                v
            }
            DFormula::Or(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.push(vec![-v, x, y]);
                self.clauses.push(vec![v, -x]);
                self.clauses.push(vec![v, -y]);
                v
            }
        }
    }
}

struct Solver<'c> {
    clauses: &'c [Vec<Lit>],
    value: Vec<i8>,
}

impl Solver<'_> {
    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: Lit, trail: &mut Vec<usize>) {
        let var = l.unsigned_abs() as usize;
        self.value[var] = if l > 0 { 1 } else { -1 };
        trail.push(var);
    }

    fn undo(&mut self, trail: &[usize]) {
        for &v in trail {
            self.value[v] = 0;
        }
    }

    /// Unit propagation to fixpoint; false on conflict.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for c in self.clauses {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &l in c {
                    match self.lit_value(l) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        0 => {
                            open_count += 1;
                            open = Some(l);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match open_count {
                    0 => return false,
                    1 => {
                        self.assign(open.expect("counted"), trail);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch_literal(&self) -> Option<Lit> {
        self.clauses
            .iter()
            .filter(|c| !c.iter().any(|&l| self.lit_value(l) == 1))
            .flat_map(|c| c.iter())
            .copied()
            .find(|&l| self.lit_value(l) == 0)
    }

    fn solve(&mut self) -> bool {
        let mut trail = Vec::new();
        if !self.propagate(&mut trail) {
            self.undo(&trail);
            return false;
        }
        let Some(l) = self.branch_literal() else {
            return true;
        };
        for choice in [l, -l] {
            let mut local = Vec::new();
            self.assign(choice, &mut local);
            if self.solve() {
                return true;
            }
            self.undo(&local);
        }
        self.undo(&trail);
        false
    }
}

/// Entailment by refuting `xs ∧ ¬y1 ∧ … ∧ ¬yk`. Works for any atom count.
pub fn entails_dpll<'a, X, Y>(xs: X, ys: Y) -> bool
where
    X: IntoIterator<Item = &'a DFormula>,
    Y: IntoIterator<Item = &'a DFormula>,
{
    let mut cnf = Cnf::default();
    let mut units = Vec::new();
    for x in xs {
        units.push(cnf.encode(x));
    }
    for y in ys {
        units.push(-cnf.encode(y));
    }
    let mut clauses = cnf.clauses;
    clauses.extend(units.into_iter().map(|l| vec![l]));
    let mut solver = Solver {
        clauses: &clauses,
        value: vec![0; cnf.vars + 1],
    };
    !solver.solve()
}
