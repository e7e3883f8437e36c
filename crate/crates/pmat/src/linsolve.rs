//! Linear systems A X = B over a pseudo-matrix A: the determinantal
//! solvability criterion, the Cramer special case, the full solver through
//! double-sided Hermite reduction, and local-to-global patching.

use crate::domain::{Domain, Elt, Fe};
use crate::error::{Error, Result};
use crate::hermite::{double_hermite, kernel_pseudobasis, HermiteConfig};
use crate::ideal::{ideal_eq, ideal_includes, FgIdeal};
use crate::pseudo::{determinantal_ideal, kmat_det, minor_ideal, KMat, PseudoBasis, PseudoMatrix};
use crate::quadratic::express_one;

/// Outcome of `solve_full`.  When unsolvable, `failing_row` points at the
/// first condition that broke: a nonzero coordinate past the rank after the
/// row transform, or a forward-substitution value leaving its column ideal.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub solvable: bool,
    pub particular: Option<Vec<Fe>>,
    pub kernel: Option<PseudoBasis>,
    pub failing_row: Option<usize>,
}

fn apply(dom: &Domain, m: &KMat, v: &[Fe]) -> Vec<Fe> {
    m.iter()
        .map(|row| {
            let mut acc = Fe::zero();
            for (a, x) in row.iter().zip(v) {
                acc = dom.fe_add(&acc, &dom.fe_mul(a, x));
            }
            acc
        })
        .collect()
}

fn check_dims(a: &PseudoMatrix, b: &[Fe]) -> Result<()> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(
            "right-hand side length must match the row count".into(),
        ));
    }
    Ok(())
}

/// A solution must satisfy x_j * bid inside e_j; this is the membership side
/// of the pseudo-matrix contract for the column (e; bid; X).
fn solution_is_valid(a: &PseudoMatrix, bid: &FgIdeal, x: &[Fe]) -> bool {
    x.iter()
        .zip(&a.col_ideals)
        .all(|(xj, ej)| xj.is_zero() || ideal_includes(ej, &bid.scale_fe(xj)))
}

/// [A | B] as a pseudo-matrix with one extra column of ideal `bid`.  The
/// membership conditions of the extra column are not required to hold.
fn augmented(a: &PseudoMatrix, b: &[Fe], bid: &FgIdeal) -> PseudoMatrix {
    let mut cols = a.col_ideals.clone();
    cols.push(bid.clone());
    let entries: KMat = a
        .entries
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    PseudoMatrix {
        dom: a.dom,
        row_ideals: a.row_ideals.clone(),
        col_ideals: cols,
        entries,
    }
}

/// Determinantal solvability test: the system has a solution X with
/// x_j * bid in e_j exactly when every determinantal ideal of [A | B] agrees
/// with the one of A.  The membership of B itself (b_i * bid in h_i) is a
/// necessary condition and is checked first.
pub fn solvable_by_ideals(a: &PseudoMatrix, b: &[Fe], bid: &FgIdeal) -> Result<bool> {
    check_dims(a, b)?;
    if b.iter().all(|x| x.is_zero()) {
        return Ok(true);
    }
    if bid.is_zero() {
        return Ok(false);
    }
    for (bi, hi) in b.iter().zip(&a.row_ideals) {
        if !bi.is_zero() && !ideal_includes(hi, &bid.scale_fe(bi)) {
            return Ok(false);
        }
    }
    let aug = augmented(a, b, bid);
    let top = a.nrows().min(a.ncols() + 1) as isize;
    for r in 1..=top {
        let da = determinantal_ideal(a, r)?;
        let daug = determinantal_ideal(&aug, r)?;
        if !ideal_eq(&da, &daug) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cramer special case for a square invertible A: when every minor ideal
/// b_i * bid * h_i^{-1} lies in the determinant ideal of A, the adjugate
/// formula x_j = det(A with column j replaced by B) / det(A) already gives a
/// valid solution.  Returns None when the containment test fails; that does
/// not decide solvability.
pub fn cramer_special(a: &PseudoMatrix, b: &[Fe], bid: &FgIdeal) -> Result<Option<Vec<Fe>>> {
    check_dims(a, b)?;
    if !a.is_square() {
        return Ok(None);
    }
    let dom = a.dom;
    let d = kmat_det(&dom, &a.entries);
    if d.is_zero() {
        return Ok(None);
    }
    let da = crate::pseudo::det_ideal(a)?;
    let bpm = PseudoMatrix {
        dom,
        row_ideals: a.row_ideals.clone(),
        col_ideals: vec![bid.clone()],
        entries: b.iter().map(|x| vec![x.clone()]).collect(),
    };
    for i in 0..a.nrows() {
        let mi = minor_ideal(&bpm, &[i], &[0])?;
        if !ideal_includes(&da, &mi) {
            return Ok(None);
        }
    }
    let mut x = Vec::with_capacity(a.ncols());
    for j in 0..a.ncols() {
        let mut m = a.entries.clone();
        for i in 0..a.nrows() {
            m[i][j] = b[i].clone();
        }
        x.push(dom.fe_div(&kmat_det(&dom, &m), &d)?);
    }
    if apply(&dom, &a.entries, &x) != b || !solution_is_valid(a, bid, &x) {
        return Err(Error::InvariantViolation("Cramer solution failed verification".into()));
    }
    Ok(Some(x))
}

/// Full solver through the double-sided Hermite form L A C = [[T, 0], [0, 0]]:
/// transform B, demand that the coordinates past the rank vanish, substitute
/// forward through T with a membership check at every step, and map back
/// through C.  The kernel pseudo-basis is attached in every case.
pub fn solve_full(
    a: &PseudoMatrix,
    b: &[Fe],
    bid: &FgIdeal,
    cfg: &HermiteConfig,
) -> Result<LinearSolution> {
    check_dims(a, b)?;
    let dom = a.dom;
    let hf = double_hermite(a, cfg)?;
    let kernel = kernel_pseudobasis(a, &hf)?;
    let r = hf.rank;
    if b.iter().all(|x| x.is_zero()) {
        return Ok(LinearSolution {
            solvable: true,
            particular: Some(vec![Fe::zero(); a.ncols()]),
            kernel: Some(kernel),
            failing_row: None,
        });
    }
    if bid.is_zero() {
        return Ok(LinearSolution {
            solvable: false,
            particular: None,
            kernel: Some(kernel),
            failing_row: None,
        });
    }
    let bp = apply(&dom, &hf.l.entries, b);
    for i in r..a.nrows() {
        if !bp[i].is_zero() {
            return Ok(LinearSolution {
                solvable: false,
                particular: None,
                kernel: Some(kernel),
                failing_row: Some(i),
            });
        }
    }
    // T Z = B' with T lower triangular: z_i is forced, and must satisfy
    // z_i * bid inside the i-th reduced column ideal
    let mut z = vec![Fe::zero(); r];
    for i in 0..r {
        let mut acc = bp[i].clone();
        for j in 0..i {
            acc = dom.fe_sub(&acc, &dom.fe_mul(&hf.h.entries[i][j], &z[j]));
        }
        z[i] = dom.fe_div(&acc, &hf.h.entries[i][i])?;
        if !z[i].is_zero() && !ideal_includes(&hf.h.col_ideals[i], &bid.scale_fe(&z[i])) {
            return Ok(LinearSolution {
                solvable: false,
                particular: None,
                kernel: Some(kernel),
                failing_row: Some(i),
            });
        }
    }
    let mut zfull = z;
    zfull.resize(a.ncols(), Fe::zero());
    let x = apply(&dom, &hf.c.entries, &zfull);
    if apply(&dom, &a.entries, &x) != b || !solution_is_valid(a, bid, &x) {
        return Err(Error::InvariantViolation("solution failed verification".into()));
    }
    Ok(LinearSolution {
        solvable: true,
        particular: Some(x),
        kernel: Some(kernel),
        failing_row: None,
    })
}

/// Local-to-global patching.  Given elements s_i generating the unit ideal and
/// local solutions (Y_i, k_i) with A Y_i = s_i^{k_i} B, rescale everything to
/// a common power k, write 1 = sum u_i s_i^k and return X = sum u_i Y_i',
/// which solves A X = B exactly.
pub fn patch_local(
    a: &PseudoMatrix,
    b: &[Fe],
    bid: &FgIdeal,
    s: &[Elt],
    locals: &[(Vec<Fe>, u64)],
) -> Result<Vec<Fe>> {
    check_dims(a, b)?;
    if s.len() != locals.len() || s.is_empty() {
        return Err(Error::Precondition(
            "need one local solution per localizing element".into(),
        ));
    }
    let dom = a.dom;
    let k = locals.iter().map(|(_, ki)| *ki).max().unwrap();
    let mut scaled: Vec<Vec<Fe>> = Vec::with_capacity(s.len());
    for (si, (y, ki)) in s.iter().zip(locals) {
        if y.len() != a.ncols() {
            return Err(Error::DimensionMismatch("local solution has the wrong length".into()));
        }
        let f = Fe::from_elt(dom.pow(si, k - ki));
        scaled.push(y.iter().map(|x| dom.fe_mul(&f, x)).collect());
    }
    let powers: Vec<Elt> = s.iter().map(|si| dom.pow(si, k)).collect();
    let u = express_one(&dom, &powers)
        .ok_or_else(|| Error::Precondition("localizing powers do not generate the unit ideal".into()))?;
    let mut x = vec![Fe::zero(); a.ncols()];
    for (ui, y) in u.iter().zip(&scaled) {
        let uf = Fe::from_elt(ui.clone());
        for j in 0..a.ncols() {
            x[j] = dom.fe_add(&x[j], &dom.fe_mul(&uf, &y[j]));
        }
    }
    if apply(&dom, &a.entries, &x) != b || !solution_is_valid(a, bid, &x) {
        return Err(Error::InvariantViolation("patched solution failed verification".into()));
    }
    Ok(x)
}
