//! Hermite reduction of pseudo-matrices by certified column operations,
//! double-sided reduction, and the module data read off from the forms:
//! image, kernel, cokernel and surjective completion.

use crate::domain::{Domain, Fe};
use crate::error::{Error, Result};
use crate::ideal::{
    colon_split, ideal_eq, ideal_includes, ideal_intersect, ideal_inverse, ideal_sum_reduced,
    FgIdeal,
};
use crate::pseudo::{
    elementary_pm, kmat_identity, kmat_mul, pm_inverse, pm_is_invertible, pm_mul,
    pm_transpose_dual, pm_validate, PseudoBasis, PseudoMatrix,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct HermiteConfig {
    /// Skip the divisibility (Gauss) pivots and always use the Bezout route.
    pub bezout_only: bool,
}

/// L * A * C = H with L a row permutation (a general invertible transform
/// after the double-sided pass), C invertible, H = [[T, 0], [G, 0]] with T
/// lower triangular of size `rank` and nonzero diagonal.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub l: PseudoMatrix,
    pub c: PseudoMatrix,
    pub h: PseudoMatrix,
    pub rank: usize,
}

/// Column transform clearing the second entry of the row (a, b) read against
/// the column ideals (ia, ib): a 2x2 pseudo-matrix P with row ideals (ia, ib)
/// and [a b] * P = [g 0].
pub fn zero_entry_pair(
    dom: &Domain,
    ia: &FgIdeal,
    ib: &FgIdeal,
    a: &Fe,
    b: &Fe,
    cfg: &HermiteConfig,
) -> Result<PseudoMatrix> {
    let one = Fe::one();
    if b.is_zero() {
        return PseudoMatrix::new(
            *dom,
            vec![ia.clone(), ib.clone()],
            vec![ia.clone(), ib.clone()],
            kmat_identity(2),
        );
    }
    if a.is_zero() {
        return PseudoMatrix::new(
            *dom,
            vec![ia.clone(), ib.clone()],
            vec![ib.clone(), ia.clone()],
            vec![vec![Fe::zero(), one.clone()], vec![one, Fe::zero()]],
        );
    }
    let aa = ia.scale_fe(a);
    let bb = ib.scale_fe(b);
    if !cfg.bezout_only {
        // divisibility pivots first: they keep the ideals untouched
        if ideal_includes(&aa, &bb) {
            let lam = dom.fe_neg(&dom.fe_div(b, a)?);
            return PseudoMatrix::new(
                *dom,
                vec![ia.clone(), ib.clone()],
                vec![ia.clone(), ib.clone()],
                vec![vec![one.clone(), lam], vec![Fe::zero(), one.clone()]],
            );
        }
        if ideal_includes(&bb, &aa) {
            let lam = dom.fe_neg(&dom.fe_div(a, b)?);
            return PseudoMatrix::new(
                *dom,
                vec![ia.clone(), ib.clone()],
                vec![ib.clone(), ia.clone()],
                vec![vec![Fe::zero(), one.clone()], vec![one.clone(), lam]],
            );
        }
    }
    // general Bezout step: scale to a' = a/b... rather a' = (1/b) ia,
    // b' = (1/a) ib, split 1 = s + t with s a' in b' and t b' in a',
    // then compose the diagonal scaling with [[t, -1], [s, 1]]
    let ap = ia.scale_fe(&dom.fe_inv(b)?);
    let bp = ib.scale_fe(&dom.fe_inv(a)?);
    let (s, t) = colon_split(&bp, &ap)?;
    let sum = ideal_sum_reduced(&ap, &bp)?;
    let cap = ideal_intersect(&ap, &bp)?.compress();
    let sf = Fe::from_elt(s);
    let tf = Fe::from_elt(t);
    let p = PseudoMatrix::new(
        *dom,
        vec![ia.clone(), ib.clone()],
        vec![sum, cap],
        vec![
            vec![dom.fe_mul(b, &tf), dom.fe_neg(b)],
            vec![dom.fe_mul(a, &sf), a.clone()],
        ],
    )?;
    pm_validate(&p)?;
    Ok(p)
}

/// Embed a 2x2 pair transform at columns (i, j) of the chain `ideals`.
fn embed_pair(
    dom: &Domain,
    ideals: &[FgIdeal],
    i: usize,
    j: usize,
    pair: &PseudoMatrix,
) -> PseudoMatrix {
    let m = ideals.len();
    let mut entries = kmat_identity(m);
    entries[i][i] = pair.entries[0][0].clone();
    entries[i][j] = pair.entries[0][1].clone();
    entries[j][i] = pair.entries[1][0].clone();
    entries[j][j] = pair.entries[1][1].clone();
    let mut cols = ideals.to_vec();
    cols[i] = pair.col_ideals[0].clone();
    cols[j] = pair.col_ideals[1].clone();
    PseudoMatrix {
        dom: *dom,
        row_ideals: ideals.to_vec(),
        col_ideals: cols,
        entries,
    }
}

fn permutation_pm(dom: &Domain, ideals: &[FgIdeal], order: &[usize]) -> PseudoMatrix {
    // row i of the result picks original row order[i]
    let n = ideals.len();
    let mut entries = vec![vec![Fe::zero(); n]; n];
    for (i, &r) in order.iter().enumerate() {
        entries[i][r] = Fe::one();
    }
    PseudoMatrix {
        dom: *dom,
        row_ideals: order.iter().map(|&r| ideals[r].clone()).collect(),
        col_ideals: ideals.to_vec(),
        entries,
    }
}

/// Hermite reduction by column operations plus a row permutation.
pub fn hermite(a: &PseudoMatrix, cfg: &HermiteConfig) -> Result<HermiteForm> {
    let dom = a.dom;
    let (n, m) = (a.nrows(), a.ncols());
    let mut cur = a.clone();
    let mut c = PseudoMatrix::identity(a.col_ideals.clone(), dom);
    let mut picked: Vec<usize> = Vec::new();
    let mut deferred: Vec<usize> = Vec::new();
    for row in 0..n {
        let p = picked.len();
        if p >= m || (p..m).all(|j| cur.entries[row][j].is_zero()) {
            deferred.push(row);
            continue;
        }
        for j in p + 1..m {
            if cur.entries[row][j].is_zero() {
                continue;
            }
            let pair = zero_entry_pair(
                &dom,
                &cur.col_ideals[p],
                &cur.col_ideals[j],
                &cur.entries[row][p],
                &cur.entries[row][j],
                cfg,
            )?;
            let e = embed_pair(&dom, &cur.col_ideals, p, j, &pair);
            cur = pm_mul(&cur, &e)?;
            c = pm_mul(&c, &e)?;
        }
        debug_assert!(!cur.entries[row][p].is_zero());
        picked.push(row);
    }
    let rank = picked.len();
    let mut order = picked;
    order.extend(deferred);
    let l = permutation_pm(&dom, &a.row_ideals, &order);
    let h = pm_mul(&pm_mul(&l, a)?, &c)?;
    // shape check: [[T, 0], [G, 0]] with T lower triangular, nonzero diagonal
    for i in 0..n {
        for j in 0..m {
            let z = h.entries[i][j].is_zero();
            if j >= rank || (i < rank && j > i) {
                debug_assert!(z, "upper/right part must vanish");
            }
            if i < rank && j == i {
                debug_assert!(!z, "pivot must be nonzero");
            }
        }
    }
    Ok(HermiteForm { l, c, h, rank })
}

/// Row transform clearing entry `b` (at row ri) against pivot `a` (row pi),
/// obtained from the column version through the dual transpose.
fn row_pair_op(
    dom: &Domain,
    ha: &FgIdeal,
    hb: &FgIdeal,
    a: &Fe,
    b: &Fe,
    cfg: &HermiteConfig,
) -> Result<PseudoMatrix> {
    let ia = ideal_inverse(&ha.compress())?;
    let ib = ideal_inverse(&hb.compress())?;
    let p = zero_entry_pair(dom, &ia, &ib, a, b, cfg)?;
    // Q = (col-ideals(P)^{-1}; ha, hb; P^T) acts on the left
    let q = pm_transpose_dual(&p)?;
    // restore the exact original ideal objects on the column side
    let mut q = q;
    q.col_ideals = vec![ha.clone(), hb.clone()];
    Ok(q)
}

fn embed_row_pair(
    dom: &Domain,
    ideals: &[FgIdeal],
    i: usize,
    j: usize,
    pair: &PseudoMatrix,
) -> PseudoMatrix {
    let n = ideals.len();
    let mut entries = kmat_identity(n);
    entries[i][i] = pair.entries[0][0].clone();
    entries[i][j] = pair.entries[0][1].clone();
    entries[j][i] = pair.entries[1][0].clone();
    entries[j][j] = pair.entries[1][1].clone();
    let mut rows = ideals.to_vec();
    rows[i] = pair.row_ideals[0].clone();
    rows[j] = pair.row_ideals[1].clone();
    PseudoMatrix {
        dom: *dom,
        row_ideals: rows,
        col_ideals: ideals.to_vec(),
        entries,
    }
}

/// Double-sided reduction: L * A * C = [[T, 0], [0, 0]] with L now a general
/// invertible pseudo-matrix.
pub fn double_hermite(a: &PseudoMatrix, cfg: &HermiteConfig) -> Result<HermiteForm> {
    let hf = hermite(a, cfg)?;
    let (n, k) = (a.nrows(), hf.rank);
    let mut h = hf.h;
    let mut l = hf.l;
    for i in k..n {
        for j in (0..k).rev() {
            if h.entries[i][j].is_zero() {
                continue;
            }
            let pair = row_pair_op(
                &a.dom,
                &h.row_ideals[j],
                &h.row_ideals[i],
                &h.entries[j][j],
                &h.entries[i][j],
                cfg,
            )?;
            let q = embed_row_pair(&a.dom, &h.row_ideals, j, i, &pair);
            h = pm_mul(&q, &h)?;
            l = pm_mul(&q, &l)?;
        }
    }
    for i in k..n {
        for j in 0..h.ncols() {
            debug_assert!(h.entries[i][j].is_zero(), "G block must be cleared");
        }
    }
    Ok(HermiteForm { l, c: hf.c, h, rank: k })
}

/// Pseudo-basis of the image: the first `rank` columns of L^{-1} H with the
/// new column ideals.
pub fn image_pseudobasis(a: &PseudoMatrix, hf: &HermiteForm) -> Result<PseudoBasis> {
    let linv = pm_inverse(&hf.l)?;
    let lh = kmat_mul(&a.dom, &linv.entries, &hf.h.entries);
    let vectors: Vec<Vec<Fe>> = (0..hf.rank)
        .map(|j| (0..a.nrows()).map(|i| lh[i][j].clone()).collect())
        .collect();
    PseudoBasis::new(
        a.dom,
        vectors,
        hf.h.col_ideals[..hf.rank].to_vec(),
    )
}

/// Pseudo-basis of the kernel: the columns of C over the zero columns of H.
pub fn kernel_pseudobasis(a: &PseudoMatrix, hf: &HermiteForm) -> Result<PseudoBasis> {
    let m = a.ncols();
    let vectors: Vec<Vec<Fe>> = (hf.rank..m)
        .map(|j| (0..m).map(|i| hf.c.entries[i][j].clone()).collect())
        .collect();
    let basis = PseudoBasis::new(a.dom, vectors, hf.c.col_ideals[hf.rank..].to_vec())?;
    // each kernel vector must be annihilated by A
    for v in &basis.vectors {
        for i in 0..a.nrows() {
            let mut acc = Fe::zero();
            for j in 0..m {
                acc = a.dom.fe_add(&acc, &a.dom.fe_mul(&a.entries[i][j], &v[j]));
            }
            if !acc.is_zero() {
                return Err(Error::InvariantViolation("kernel vector not annihilated".into()));
            }
        }
    }
    Ok(basis)
}

/// Cokernel data from the double-sided form: a square injective presentation
/// of the torsion part, the projective complement, and the saturation of the
/// image inside the target.
#[derive(Debug, Clone)]
pub struct CokernelStructure {
    pub torsion_presentation: PseudoMatrix,
    pub projective_part: PseudoBasis,
    pub saturation: PseudoBasis,
    pub free_rank: usize,
}

pub fn cokernel_structure(a: &PseudoMatrix, hf: &HermiteForm) -> Result<CokernelStructure> {
    let (n, k) = (a.nrows(), hf.rank);
    let linv = pm_inverse(&hf.l)?;
    let tors = PseudoMatrix::new(
        a.dom,
        hf.h.row_ideals[..k].to_vec(),
        hf.h.col_ideals[..k].to_vec(),
        (0..k)
            .map(|i| (0..k).map(|j| hf.h.entries[i][j].clone()).collect())
            .collect(),
    )?;
    pm_validate(&tors)?;
    let col = |j: usize| -> Vec<Fe> { (0..n).map(|i| linv.entries[i][j].clone()).collect() };
    let projective = PseudoBasis::new(
        a.dom,
        (k..n).map(col).collect(),
        hf.h.row_ideals[k..].to_vec(),
    )?;
    let saturation = PseudoBasis::new(
        a.dom,
        (0..k).map(col).collect(),
        hf.h.row_ideals[..k].to_vec(),
    )?;
    Ok(CokernelStructure {
        torsion_presentation: tors,
        projective_part: projective,
        saturation,
        free_rank: n - k,
    })
}

/// Change of pseudo-basis C = [[A1^{-1}, -A1^{-1} A2], [0, I]] and row
/// transform L = [[I, 0], [-A3 A1^{-1}, I]] turning A into [[I_k, 0], [0, A'']]
/// when the leading k x k minor ideal is the unit ideal.
pub struct PivotedForm {
    pub l: PseudoMatrix,
    pub c: PseudoMatrix,
    pub reduced: PseudoMatrix,
    pub complement: PseudoMatrix,
}

pub fn pivot_invertible_minor(a: &PseudoMatrix, k: usize) -> Result<PivotedForm> {
    use crate::pseudo::{minor_ideal, pm_assemble, pm_block};
    let idx: Vec<usize> = (0..k).collect();
    if !minor_ideal(a, &idx, &idx)?.is_one() {
        return Err(Error::Precondition("leading minor ideal is not the unit ideal".into()));
    }
    let dom = a.dom;
    let (a1, a2, a3, _a4) = pm_block(a, k, k);
    let c1 = pm_inverse(&a1)?;
    let mut c2 = pm_mul(&c1, &a2)?;
    c2.entries = c2.entries.iter().map(|r| r.iter().map(|x| dom.fe_neg(x)).collect()).collect();
    let zero_block = PseudoMatrix::new(
        dom,
        a.col_ideals[k..].to_vec(),
        c1.col_ideals.clone(),
        vec![vec![Fe::zero(); k]; a.ncols() - k],
    )?;
    let id_tail = PseudoMatrix::identity(a.col_ideals[k..].to_vec(), dom);
    let c = pm_assemble(&c1, &c2, &zero_block, &id_tail)?;
    let mut l3 = pm_mul(&a3, &c1)?;
    l3.entries = l3.entries.iter().map(|r| r.iter().map(|x| dom.fe_neg(x)).collect()).collect();
    let id_top = PseudoMatrix::identity(a.row_ideals[..k].to_vec(), dom);
    let zero_tr = PseudoMatrix::new(
        dom,
        id_top.row_ideals.clone(),
        a.row_ideals[k..].to_vec(),
        vec![vec![Fe::zero(); a.nrows() - k]; k],
    )?;
    let id_bot = PseudoMatrix::identity(a.row_ideals[k..].to_vec(), dom);
    // l3 maps the leading row chain into the trailing one
    let l = pm_assemble(&id_top, &zero_tr, &l3, &id_bot)?;
    let reduced = pm_mul(&pm_mul(&l, a)?, &c)?;
    // complement A'' = A4 - A3 A1^{-1} A2
    let (_, _, _, comp) = pm_block(&reduced, k, k);
    Ok(PivotedForm { l, c, reduced, complement: comp })
}

/// Completion of a surjective pseudo-matrix (D_n(A) the unit ideal, n <= m):
/// an invertible B with A B^{-1} = [I_n | 0] and the right inverse R = first
/// n columns of B^{-1}, with A R = I_n exactly.
#[derive(Debug, Clone)]
pub struct SurjectiveCompletion {
    pub b: PseudoMatrix,
    pub binv: PseudoMatrix,
    pub right_inverse: PseudoMatrix,
}

pub fn complete_surjective(a: &PseudoMatrix, cfg: &HermiteConfig) -> Result<SurjectiveCompletion> {
    let dom = a.dom;
    let (n, m) = (a.nrows(), a.ncols());
    if n > m {
        return Err(Error::Negative("more rows than columns: not surjective".into()));
    }
    let hf = hermite(a, cfg)?;
    if hf.rank < n {
        return Err(Error::Negative("rank deficit: not surjective".into()));
    }
    // T must be invertible entry-chain-wise: every diagonal minor ideal is
    // the unit ideal
    let mut d = hf.c.clone();
    let mut t = hf.h.clone();
    let perm_inv = pm_inverse(&hf.l)?;
    // undo the row permutation so that T aligns with A's own rows
    t = pm_mul(&perm_inv, &t)?;
    for i in 0..n {
        let mi = crate::pseudo::minor_ideal(&t, &[i], &[i])?;
        if !mi.is_one() {
            return Err(Error::Negative("diagonal minor ideal is not the unit ideal".into()));
        }
    }
    // clear the subdiagonal with Gauss pivots lambda = t_ij / t_ii
    for j in 0..n {
        for i in j + 1..n {
            if t.entries[i][j].is_zero() {
                continue;
            }
            let lam = dom.fe_neg(&dom.fe_div(&t.entries[i][j], &t.entries[i][i])?);
            let e = elementary_pm(dom, &t.col_ideals, i, j, &lam)?;
            t = pm_mul(&t, &e)?;
            d = pm_mul(&d, &e)?;
        }
    }
    // scale the diagonal away: column j gets 1/t_jj, its ideal becomes h_j
    let mut cols = t.col_ideals.clone();
    let mut entries = kmat_identity(m);
    for j in 0..n {
        entries[j][j] = dom.fe_inv(&t.entries[j][j])?;
        cols[j] = a.row_ideals[j].clone();
    }
    let dg = PseudoMatrix::new(dom, t.col_ideals.clone(), cols, entries)?;
    pm_validate(&dg)?;
    t = pm_mul(&t, &dg)?;
    d = pm_mul(&d, &dg)?;
    pm_validate(&d)?;
    // now A * D = [I_n | 0] exactly
    let ad = pm_mul(a, &d)?;
    for i in 0..n {
        for j in 0..m {
            let expect = i == j;
            if ad.entries[i][j].is_one() != expect || (!expect && !ad.entries[i][j].is_zero()) {
                return Err(Error::InvariantViolation("A D is not [I | 0]".into()));
            }
        }
    }
    let _ = t;
    let b = pm_inverse(&d)?;
    let right_inverse = PseudoMatrix::new(
        dom,
        d.row_ideals.clone(),
        d.col_ideals[..n].to_vec(),
        (0..m)
            .map(|i| (0..n).map(|j| d.entries[i][j].clone()).collect())
            .collect(),
    )?;
    // A * R = I_n bit-exactly
    let ar = kmat_mul(&dom, &a.entries, &right_inverse.entries);
    if ar != kmat_identity(n) {
        return Err(Error::InvariantViolation("A R is not the identity".into()));
    }
    Ok(SurjectiveCompletion { b, binv: d, right_inverse })
}

/// Check an invertible chain condition used by callers: det ideal of C is
/// the unit ideal.
pub fn transform_is_invertible(c: &PseudoMatrix) -> Result<bool> {
    pm_is_invertible(c)
}

/// Equality of determinantal chains, used to compare A with its Hermite form.
pub fn det_chains_equal(a: &PseudoMatrix, b: &PseudoMatrix) -> Result<bool> {
    use crate::pseudo::determinantal_ideal;
    let top = a.nrows().min(a.ncols()).max(b.nrows().min(b.ncols())) as isize;
    for r in 0..=top + 1 {
        let x = determinantal_ideal(a, r)?;
        let y = determinantal_ideal(b, r)?;
        if !ideal_eq(&x, &y) {
            return Ok(false);
        }
    }
    Ok(true)
}
