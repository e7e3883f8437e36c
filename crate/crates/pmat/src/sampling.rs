//! Deterministic random inputs shared by tests and benches: ideals, elements
//! inside a given ideal, and valid pseudo-matrices.

use num_bigint::BigInt;

use crate::domain::{Domain, Elt, Fe};
use crate::ideal::{ideal_quotient, FgIdeal};
use crate::pseudo::PseudoMatrix;
use crate::testutil::XorShift;

pub fn random_elt(dom: &Domain, rng: &mut XorShift, bound: i64) -> Elt {
    let y = if dom.is_int() { 0 } else { rng.next_i64_in(-bound, bound) };
    Elt::from_pair(rng.next_i64_in(-bound, bound), y)
}

pub fn random_fe(dom: &Domain, rng: &mut XorShift, bound: i64, max_den: i64) -> Fe {
    dom.fe_new(random_elt(dom, rng, bound), BigInt::from(rng.next_i64_in(1, max_den)))
        .unwrap()
}

/// Random nonzero fractional ideal with up to three small generators.
pub fn random_ideal(dom: &Domain, rng: &mut XorShift) -> FgIdeal {
    loop {
        let n = 1 + (rng.next() % 3) as usize;
        let gens: Vec<Fe> = (0..n).map(|_| random_fe(dom, rng, 9, 6)).collect();
        let i = FgIdeal::new(*dom, &gens).unwrap();
        if !i.is_zero() {
            return i;
        }
    }
}

/// Random element of the given fractional ideal (a small ring combination of
/// its generators); may be zero.
pub fn random_member(ideal: &FgIdeal, rng: &mut XorShift) -> Fe {
    let dom = &ideal.dom;
    let mut acc = Fe::zero();
    for g in ideal.gens_fe() {
        let c = random_elt(dom, rng, 2);
        acc = dom.fe_add(&acc, &dom.fe_mul(&Fe::from_elt(c), &g));
    }
    acc
}

/// Random valid pseudo-matrix with prescribed row ideals (and optionally
/// column ideals): entries drawn from h_i * e_j^{-1} so the membership
/// conditions hold by construction.
pub fn random_pm_with(
    dom: &Domain,
    row_ideals: Vec<FgIdeal>,
    col_ideals: Option<Vec<FgIdeal>>,
    m: usize,
    rng: &mut XorShift,
) -> PseudoMatrix {
    let n = row_ideals.len();
    let col_ideals =
        col_ideals.unwrap_or_else(|| (0..m).map(|_| random_ideal(dom, rng)).collect());
    let mut entries = vec![vec![Fe::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let q = ideal_quotient(&row_ideals[i], &col_ideals[j]).unwrap();
            entries[i][j] = random_member(&q, rng);
        }
    }
    PseudoMatrix::new(*dom, row_ideals, col_ideals, entries).unwrap()
}

pub fn random_pseudo_matrix(dom: &Domain, n: usize, m: usize, rng: &mut XorShift) -> PseudoMatrix {
    let rows: Vec<FgIdeal> = (0..n).map(|_| random_ideal(dom, rng)).collect();
    random_pm_with(dom, rows, None, m, rng)
}

/// Pseudo-matrix with trivial ideals and small integer entries.
pub fn random_classical_matrix(dom: &Domain, n: usize, m: usize, rng: &mut XorShift, bound: i64) -> PseudoMatrix {
    let row_ideals: Vec<FgIdeal> = (0..n).map(|_| FgIdeal::one(*dom)).collect();
    let col_ideals: Vec<FgIdeal> = (0..m).map(|_| FgIdeal::one(*dom)).collect();
    let entries: Vec<Vec<Fe>> = (0..n)
        .map(|_| (0..m).map(|_| Fe::from_elt(random_elt(dom, rng, bound))).collect())
        .collect();
    PseudoMatrix::new(*dom, row_ideals, col_ideals, entries).unwrap()
}
