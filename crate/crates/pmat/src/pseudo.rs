//! Pseudo-matrices: a matrix over the fraction field together with one
//! fractional ideal per row and per column, subject to a_ij e_j included in
//! h_i. Determinant ideals, minors, inverses and block calculus.


use crate::domain::{Domain, Fe};
use crate::error::{Error, Result};
use crate::ideal::{
    ideal_eq, ideal_inverse, ideal_mul_reduced, ideal_sum_reduced, member, FgIdeal,
};

pub type KMat = Vec<Vec<Fe>>;
pub type DetIdeal = FgIdeal;

pub fn kmat_identity(n: usize) -> KMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Fe::one() } else { Fe::zero() }).collect())
        .collect()
}

pub fn kmat_zero(n: usize, m: usize) -> KMat {
    vec![vec![Fe::zero(); m]; n]
}

pub fn kmat_mul(dom: &Domain, a: &KMat, b: &KMat) -> KMat {
    let n = a.len();
    let k = if n > 0 { a[0].len() } else { 0 };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(k, b.len(), "inner dimensions must agree");
    let mut out = kmat_zero(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                let t = dom.fe_mul(&a[i][l], &b[l][j]);
                out[i][j] = dom.fe_add(&out[i][j], &t);
            }
        }
    }
    out
}

pub fn kmat_transpose(a: &KMat) -> KMat {
    let n = a.len();
    let m = if n > 0 { a[0].len() } else { 0 };
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn kmat_det(dom: &Domain, a: &KMat) -> Fe {
    let n = a.len();
    if n == 0 {
        return Fe::one();
    }
    let mut m = a.clone();
    let mut det = Fe::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !m[i][k].is_zero()) {
            Some(p) => p,
            None => return Fe::zero(),
        };
        if pivot != k {
            m.swap(pivot, k);
            det = dom.fe_neg(&det);
        }
        det = dom.fe_mul(&det, &m[k][k]);
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = dom.fe_div(&m[i][k], &m[k][k]).unwrap();
            for j in k..n {
                let t = dom.fe_mul(&f, &m[k][j]);
                m[i][j] = dom.fe_sub(&m[i][j], &t);
            }
        }
    }
    det
}

pub fn kmat_rank(dom: &Domain, a: &KMat) -> usize {
    let n = a.len();
    let m = if n > 0 { a[0].len() } else { 0 };
    let mut w = a.clone();
    let mut rank = 0;
    for j in 0..m {
        let pivot = match (rank..n).find(|&i| !w[i][j].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        w.swap(pivot, rank);
        for i in rank + 1..n {
            if w[i][j].is_zero() {
                continue;
            }
            let f = dom.fe_div(&w[i][j], &w[rank][j]).unwrap();
            for l in j..m {
                let t = dom.fe_mul(&f, &w[rank][l]);
                w[i][l] = dom.fe_sub(&w[i][l], &t);
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

pub fn kmat_inverse(dom: &Domain, a: &KMat) -> Result<KMat> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = kmat_identity(n);
    for k in 0..n {
        let pivot = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or_else(|| Error::NotInvertible("singular matrix over K".into()))?;
        if pivot != k {
            m.swap(pivot, k);
            inv.swap(pivot, k);
        }
        let p = m[k][k].clone();
        for j in 0..n {
            m[k][j] = dom.fe_div(&m[k][j], &p).unwrap();
            inv[k][j] = dom.fe_div(&inv[k][j], &p).unwrap();
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..n {
                let t = dom.fe_mul(&f, &m[k][j]);
                m[i][j] = dom.fe_sub(&m[i][j], &t);
                let t = dom.fe_mul(&f, &inv[k][j]);
                inv[i][j] = dom.fe_sub(&inv[i][j], &t);
            }
        }
    }
    Ok(inv)
}

pub fn kmat_adjugate(dom: &Domain, a: &KMat) -> KMat {
    let n = a.len();
    let mut adj = kmat_zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let sub: KMat = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a[r][c].clone())
                        .collect()
                })
                .collect();
            let mut cof = kmat_det(dom, &sub);
            if (i + j) % 2 == 1 {
                cof = dom.fe_neg(&cof);
            }
            adj[j][i] = cof;
        }
    }
    adj
}

#[derive(Debug, Clone)]
pub struct PseudoMatrix {
    pub dom: Domain,
    pub row_ideals: Vec<FgIdeal>,
    pub col_ideals: Vec<FgIdeal>,
    pub entries: KMat,
}

impl PseudoMatrix {
    pub fn new(
        dom: Domain,
        row_ideals: Vec<FgIdeal>,
        col_ideals: Vec<FgIdeal>,
        entries: KMat,
    ) -> Result<PseudoMatrix> {
        let n = row_ideals.len();
        let m = col_ideals.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "entry matrix is not {} x {}",
                n, m
            )));
        }
        if row_ideals.iter().chain(col_ideals.iter()).any(|i| i.is_zero()) {
            return Err(Error::ZeroIdeal("pseudo-matrix ideals must be nonzero".into()));
        }
        Ok(PseudoMatrix { dom, row_ideals, col_ideals, entries })
    }

    pub fn identity(ideals: Vec<FgIdeal>, dom: Domain) -> PseudoMatrix {
        let n = ideals.len();
        PseudoMatrix {
            dom,
            row_ideals: ideals.clone(),
            col_ideals: ideals,
            entries: kmat_identity(n),
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_ideals.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_ideals.len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }
}

/// The defining memberships a_ij e_j in h_i, entry by entry and generator by
/// generator.
pub fn pm_validate(a: &PseudoMatrix) -> Result<()> {
    let dom = &a.dom;
    for j in 0..a.ncols() {
        let gens = a.col_ideals[j].gens_fe();
        for i in 0..a.nrows() {
            if a.entries[i][j].is_zero() {
                continue;
            }
            for g in &gens {
                let x = dom.fe_mul(&a.entries[i][j], g);
                if !member(&x, &a.row_ideals[i]) {
                    return Err(Error::InvariantViolation(format!(
                        "entry ({}, {}) violates a_ij e_j in h_i",
                        i, j
                    )));
                }
            }
        }
    }
    Ok(())
}

fn chains_eq(a: &[FgIdeal], b: &[FgIdeal]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| ideal_eq(x, y))
}

pub fn pm_mul(a: &PseudoMatrix, b: &PseudoMatrix) -> Result<PseudoMatrix> {
    if a.dom != b.dom {
        return Err(Error::DomainMismatch);
    }
    if !chains_eq(&a.col_ideals, &b.row_ideals) {
        return Err(Error::Precondition(
            "inner ideal chains do not match in pseudo-matrix product".into(),
        ));
    }
    Ok(PseudoMatrix {
        dom: a.dom,
        row_ideals: a.row_ideals.clone(),
        col_ideals: b.col_ideals.clone(),
        entries: kmat_mul(&a.dom, &a.entries, &b.entries),
    })
}

/// det(A) * e_1 ... e_m * (h_1 ... h_n)^{-1}, the zero ideal when det = 0.
pub fn det_ideal(a: &PseudoMatrix) -> Result<DetIdeal> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("determinant ideal of a non-square pseudo-matrix".into()));
    }
    let d = kmat_det(&a.dom, &a.entries);
    scaled_ideal_product(a, &d, &(0..a.nrows()).collect::<Vec<_>>(), &(0..a.ncols()).collect::<Vec<_>>())
}

fn scaled_ideal_product(a: &PseudoMatrix, d: &Fe, rows: &[usize], cols: &[usize]) -> Result<FgIdeal> {
    let mut acc = FgIdeal::principal(a.dom, d)?;
    for &j in cols {
        acc = ideal_mul_reduced(&acc, &a.col_ideals[j])?;
    }
    for &i in rows {
        let inv = ideal_inverse(&a.row_ideals[i].compress())?;
        acc = ideal_mul_reduced(&acc, &inv)?;
    }
    Ok(acc)
}

/// Minor ideal of the square submatrix on `rows` x `cols`.
pub fn minor_ideal(a: &PseudoMatrix, rows: &[usize], cols: &[usize]) -> Result<FgIdeal> {
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch("minor needs as many rows as columns".into()));
    }
    let sub: KMat = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| a.entries[i][j].clone()).collect())
        .collect();
    let d = kmat_det(&a.dom, &sub);
    scaled_ideal_product(a, &d, rows, cols)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// r-th determinantal ideal: the unit ideal for r <= 0, the zero ideal past
/// the format, otherwise the sum of all r x r minor ideals.
pub fn determinantal_ideal(a: &PseudoMatrix, r: isize) -> Result<FgIdeal> {
    if r <= 0 {
        return Ok(FgIdeal::one(a.dom));
    }
    let r = r as usize;
    if r > a.nrows().min(a.ncols()) {
        return Ok(FgIdeal::zero(a.dom));
    }
    let mut acc = FgIdeal::zero(a.dom);
    for rows in combinations(a.nrows(), r) {
        for cols in combinations(a.ncols(), r) {
            let m = minor_ideal(a, &rows, &cols)?;
            acc = ideal_sum_reduced(&acc, &m)?;
        }
    }
    Ok(acc)
}

pub fn pm_is_invertible(a: &PseudoMatrix) -> Result<bool> {
    if !a.is_square() {
        return Ok(false);
    }
    Ok(det_ideal(a)?.is_one())
}

/// Inverse pseudo-matrix (e; h; A^{-1}); checked to be valid and to give the
/// identity in both orders.
pub fn pm_inverse(a: &PseudoMatrix) -> Result<PseudoMatrix> {
    if !pm_is_invertible(a)? {
        return Err(Error::NotInvertible("determinant ideal is not the unit ideal".into()));
    }
    let inv_entries = kmat_inverse(&a.dom, &a.entries)?;
    let inv = PseudoMatrix {
        dom: a.dom,
        row_ideals: a.col_ideals.clone(),
        col_ideals: a.row_ideals.clone(),
        entries: inv_entries,
    };
    pm_validate(&inv)?;
    let n = a.nrows();
    if kmat_mul(&a.dom, &a.entries, &inv.entries) != kmat_identity(n)
        || kmat_mul(&a.dom, &inv.entries, &a.entries) != kmat_identity(n)
    {
        return Err(Error::InvariantViolation("inverse product is not the identity".into()));
    }
    Ok(inv)
}

/// Elementary pseudo-matrix I + lambda E_ij on the given ideal chain; right
/// multiplication performs C_j += lambda C_i. Requires lambda e_j in e_i.
pub fn elementary_pm(
    dom: Domain,
    ideals: &[FgIdeal],
    i: usize,
    j: usize,
    lambda: &Fe,
) -> Result<PseudoMatrix> {
    if i == j || i >= ideals.len() || j >= ideals.len() {
        return Err(Error::Precondition("elementary pseudo-matrix needs distinct valid indices".into()));
    }
    for g in ideals[j].gens_fe() {
        if !member(&dom.fe_mul(lambda, &g), &ideals[i]) {
            return Err(Error::Precondition("lambda e_j is not contained in e_i".into()));
        }
    }
    let mut entries = kmat_identity(ideals.len());
    entries[i][j] = lambda.clone();
    Ok(PseudoMatrix {
        dom,
        row_ideals: ideals.to_vec(),
        col_ideals: ideals.to_vec(),
        entries,
    })
}

/// Classical Bezout matrix: identity except for the 2x2 block
/// [[u, v], [s, t]] at rows/columns (i, j); requires u t - v s = 1.
pub fn bezout_kmat(dom: &Domain, n: usize, i: usize, j: usize, u: &Fe, v: &Fe, s: &Fe, t: &Fe) -> Result<KMat> {
    let det = dom.fe_sub(&dom.fe_mul(u, t), &dom.fe_mul(v, s));
    if !det.is_one() {
        return Err(Error::Precondition("Bezout block must have determinant 1".into()));
    }
    let mut m = kmat_identity(n);
    m[i][i] = u.clone();
    m[i][j] = v.clone();
    m[j][i] = s.clone();
    m[j][j] = t.clone();
    Ok(m)
}

/// Split into blocks at row rk and column ck; degenerate splits are fine.
pub fn pm_block(a: &PseudoMatrix, rk: usize, ck: usize) -> (PseudoMatrix, PseudoMatrix, PseudoMatrix, PseudoMatrix) {
    let take = |r0: usize, r1: usize, c0: usize, c1: usize| PseudoMatrix {
        dom: a.dom,
        row_ideals: a.row_ideals[r0..r1].to_vec(),
        col_ideals: a.col_ideals[c0..c1].to_vec(),
        entries: (r0..r1)
            .map(|i| (c0..c1).map(|j| a.entries[i][j].clone()).collect())
            .collect(),
    };
    let (n, m) = (a.nrows(), a.ncols());
    (
        take(0, rk, 0, ck),
        take(0, rk, ck, m),
        take(rk, n, 0, ck),
        take(rk, n, ck, m),
    )
}

pub fn pm_assemble(
    a11: &PseudoMatrix,
    a12: &PseudoMatrix,
    a21: &PseudoMatrix,
    a22: &PseudoMatrix,
) -> Result<PseudoMatrix> {
    if !chains_eq(&a11.row_ideals, &a12.row_ideals)
        || !chains_eq(&a21.row_ideals, &a22.row_ideals)
        || !chains_eq(&a11.col_ideals, &a21.col_ideals)
        || !chains_eq(&a12.col_ideals, &a22.col_ideals)
    {
        return Err(Error::Precondition("block ideal chains do not match".into()));
    }
    let mut row_ideals = a11.row_ideals.clone();
    row_ideals.extend(a21.row_ideals.clone());
    let mut col_ideals = a11.col_ideals.clone();
    col_ideals.extend(a12.col_ideals.clone());
    let mut entries: KMat = Vec::new();
    for (top, right) in a11.entries.iter().zip(&a12.entries) {
        let mut r = top.clone();
        r.extend(right.clone());
        entries.push(r);
    }
    for (bot, right) in a21.entries.iter().zip(&a22.entries) {
        let mut r = bot.clone();
        r.extend(right.clone());
        entries.push(r);
    }
    PseudoMatrix::new(a11.dom, row_ideals, col_ideals, entries)
}

/// Dual transpose (e_j^{-1}; h_i^{-1}; A^T): valid exactly when A is, and it
/// turns row operations into column operations.
pub fn pm_transpose_dual(a: &PseudoMatrix) -> Result<PseudoMatrix> {
    let row_ideals: Vec<FgIdeal> = a
        .col_ideals
        .iter()
        .map(|e| ideal_inverse(&e.compress()))
        .collect::<Result<_>>()?;
    let col_ideals: Vec<FgIdeal> = a
        .row_ideals
        .iter()
        .map(|h| ideal_inverse(&h.compress()))
        .collect::<Result<_>>()?;
    Ok(PseudoMatrix {
        dom: a.dom,
        row_ideals,
        col_ideals,
        entries: kmat_transpose(&a.entries),
    })
}

/// A family of vectors with coefficient ideals: the module sum of e_j v_j.
#[derive(Debug, Clone)]
pub struct PseudoBasis {
    pub dom: Domain,
    pub vectors: Vec<Vec<Fe>>, // one inner Vec per vector
    pub ideals: Vec<FgIdeal>,
}

impl PseudoBasis {
    pub fn new(dom: Domain, vectors: Vec<Vec<Fe>>, ideals: Vec<FgIdeal>) -> Result<PseudoBasis> {
        if vectors.len() != ideals.len() {
            return Err(Error::DimensionMismatch("one coefficient ideal per vector".into()));
        }
        let dim = vectors.first().map(|v| v.len()).unwrap_or(0);
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch("vectors of unequal length".into()));
        }
        Ok(PseudoBasis { dom, vectors, ideals })
    }

    /// Vectors as the columns of a matrix.
    pub fn as_matrix(&self) -> KMat {
        let k = self.vectors.len();
        let dim = self.vectors.first().map(|v| v.len()).unwrap_or(0);
        (0..dim)
            .map(|i| (0..k).map(|j| self.vectors[j][i].clone()).collect())
            .collect()
    }
}

/// Transport a pseudo-basis along an invertible pseudo-matrix whose row chain
/// matches the basis ideals: new vectors V * P, new ideals the column chain.
pub fn change_pseudobasis(basis: &PseudoBasis, p: &PseudoMatrix) -> Result<PseudoBasis> {
    if !pm_is_invertible(p)? {
        return Err(Error::NotInvertible("change of pseudo-basis must be invertible".into()));
    }
    if !chains_eq(&basis.ideals, &p.row_ideals) {
        return Err(Error::Precondition("basis ideals do not match the transform".into()));
    }
    let vm = kmat_mul(&basis.dom, &basis.as_matrix(), &p.entries);
    let vectors: Vec<Vec<Fe>> = (0..p.ncols())
        .map(|j| (0..vm.len()).map(|i| vm[i][j].clone()).collect())
        .collect();
    PseudoBasis::new(basis.dom, vectors, p.col_ideals.clone())
}
