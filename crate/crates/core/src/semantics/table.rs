//! Bit-parallel truth tables: each formula evaluates to a bit vector with
//! one bit per valuation of the queried atoms.

use crate::formula::{Atom, DFormula};

/// Largest atom count decided by truth tables.
pub const TRUTH_TABLE_LIMIT: usize = 16;

/// Column patterns for the six atoms that vary within one word.
const LOW: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn index_of(atoms: &[&Atom], a: &Atom) -> usize {
    atoms.iter().position(|b| *b == a).expect("atom collected beforehand")
}

/// Single-word evaluation for at most six atoms.
fn column64(f: &DFormula, atoms: &[&Atom]) -> u64 {
    match f {
        DFormula::Atom(a) => LOW[index_of(atoms, a)],
        DFormula::Neg(a) => !column64(a, atoms),
        DFormula::And(a, b) => column64(a, atoms) & column64(b, atoms),
        DFormula::Or(a, b) => column64(a, atoms) | column64(b, atoms),
    }
}

fn atom_column(i: usize, words: usize) -> Vec<u64> {
    if i < 6 {
        vec![LOW[i]; words]
    } else {
        (0..words)
            .map(|w| if (w >> (i - 6)) & 1 == 1 { u64::MAX } else { 0 })
            .collect()
    }
}

fn column(f: &DFormula, atoms: &[&Atom], words: usize) -> Vec<u64> {
    match f {
        DFormula::Atom(a) => atom_column(index_of(atoms, a), words),
        DFormula::Neg(a) => {
            let mut c = column(a, atoms, words);
            c.iter_mut().for_each(|w| *w = !*w);
            c
        }
        DFormula::And(a, b) => {
            let mut c = column(a, atoms, words);
            c.iter_mut().zip(column(b, atoms, words)).for_each(|(x, y)| *x &= y);
            c
        }
        DFormula::Or(a, b) => {
            let mut c = column(a, atoms, words);
            c.iter_mut().zip(column(b, atoms, words)).for_each(|(x, y)| *x |= y);
            c
        }
    }
}

fn collect_atoms<'a>(f: &'a DFormula, out: &mut Vec<&'a Atom>) {
    match f {
        DFormula::Atom(a) => {
            if !out.contains(&a) {
                out.push(a);
            }
        }
        DFormula::Neg(a) => collect_atoms(a, out),
        DFormula::And(a, b) | DFormula::Or(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
    }
}

/// Truth-table entailment, or `None` when more than [`TRUTH_TABLE_LIMIT`]
/// atoms occur.
pub fn entails_truth_table<'a, X, Y>(xs: X, ys: Y) -> Option<bool>
where
    X: IntoIterator<Item = &'a DFormula>,
    Y: IntoIterator<Item = &'a DFormula>,
{
    let xs: Vec<&DFormula> = xs.into_iter().collect();
    let ys: Vec<&DFormula> = ys.into_iter().collect();
    let mut atoms: Vec<&Atom> = Vec::new();
    for f in xs.iter().chain(&ys) {
        collect_atoms(f, &mut atoms);
    }
    let n = atoms.len();
    if n > TRUTH_TABLE_LIMIT {
        return None;
    }
    if n <= 6 {
        let mut acc = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        for x in &xs {
            acc &= column64(x, &atoms);
            if acc == 0 {
                return Some(true);
            }
        }
        for y in &ys {
            acc &= !column64(y, &atoms);
            if acc == 0 {
                return Some(true);
            }
        }
        return Some(acc == 0);
    }
    let words = 1usize << (n - 6);
    let mut acc = vec![u64::MAX; words];
    for x in &xs {
        acc.iter_mut().zip(column(x, &atoms, words)).for_each(|(a, c)| *a &= c);
    }
    for y in &ys {
        acc.iter_mut().zip(column(y, &atoms, words)).for_each(|(a, c)| *a &= !c);
    }
    Some(acc.iter().all(|w| *w == 0))
}
