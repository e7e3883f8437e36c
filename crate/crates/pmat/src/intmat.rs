//! Exact integer matrix kernel: column-style Hermite form, Smith form and
//! linear solving over Z. Everything returns its transforms so callers can
//! re-check the defining identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntMat = Vec<Vec<BigInt>>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn mat_from_i64(rows: &[&[i64]]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect()
}

pub fn identity_int(n: usize) -> IntMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn zero_mat(n: usize, m: usize) -> IntMat {
    vec![vec![BigInt::zero(); m]; n]
}

pub fn mat_mul_int(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let k = if n > 0 { a[0].len() } else { 0 };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(k, b.len(), "inner dimensions must agree");
    let mut out = zero_mat(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn transpose_int(a: &IntMat) -> IntMat {
    let n = a.len();
    let m = if n > 0 { a[0].len() } else { 0 };
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn perm_matrix(order: &[usize]) -> IntMat {
    // row i of the result picks original row order[i]
    let n = order.len();
    let mut p = zero_mat(n, n);
    for (i, &r) in order.iter().enumerate() {
        p[i][r] = BigInt::one();
    }
    p
}

/// Fraction-free (Bareiss) determinant.
pub fn det_int(a: &IntMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

pub fn is_unimodular(a: &IntMat) -> bool {
    det_int(a).abs().is_one()
}

/// Inverse of an integer matrix with determinant ±1 (adjugate route).
pub fn inverse_unimodular(a: &IntMat) -> Result<IntMat> {
    let n = a.len();
    let d = det_int(a);
    if !d.abs().is_one() {
        return Err(Error::NotInvertible(format!("determinant {} is not a unit", d)));
    }
    let mut inv = zero_mat(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor expansion; matrices here are small
            let mut sub = Vec::with_capacity(n - 1);
            for r in 0..n {
                if r == i {
                    continue;
                }
                let mut row = Vec::with_capacity(n - 1);
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    row.push(a[r][c].clone());
                }
                sub.push(row);
            }
            let mut cof = det_int(&sub);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[j][i] = &cof * &d; // divide by det = multiply by ±1
        }
    }
    Ok(inv)
}

/// Result of a two-sided reduction `left * m * right = form`.
#[derive(Debug, Clone)]
pub struct IntMatrixForm {
    pub left: IntMat,
    pub right: IntMat,
    pub form: IntMat,
    pub rank: usize,
}

fn col_bezout(m: &mut IntMat, c: &mut IntMat, row: usize, p: usize, j: usize) {
    // combine columns p and j so that entry (row, p) becomes gcd and (row, j) zero
    let a = m[row][p].clone();
    let b = m[row][j].clone();
    if b.is_zero() {
        return;
    }
    if !a.is_zero() && (&b % &a).is_zero() {
        // plain elimination keeps the pivot column untouched
        let q = -(&b / &a);
        add_col_multiple(m, c, j, p, &q);
        return;
    }
    let e = a.extended_gcd(&b);
    let (g, u, v) = (e.gcd, e.x, e.y);
    let (aq, bq) = (&a / &g, &b / &g);
    for mat in [&mut *m, &mut *c] {
        for r in mat.iter_mut() {
            let np = &u * &r[p] + &v * &r[j];
            let nj = -&bq * &r[p] + &aq * &r[j];
            r[p] = np;
            r[j] = nj;
        }
    }
}

fn negate_col(m: &mut IntMat, c: &mut IntMat, j: usize) {
    for mat in [&mut *m, &mut *c] {
        for r in mat.iter_mut() {
            r[j] = -std::mem::take(&mut r[j]);
        }
    }
}

fn add_col_multiple(m: &mut IntMat, c: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    // col_dst += q * col_src
    for mat in [&mut *m, &mut *c] {
        for r in mat.iter_mut() {
            let t = q * &r[src];
            r[dst] += t;
        }
    }
}

/// Column-style Hermite normal form: returns P, C with `P * m * C = [[T,0],[G,0]]`
/// where T is lower triangular with positive diagonal and every below-diagonal
/// entry reduced modulo the diagonal of its row; P is a row permutation and C is
/// unimodular.
pub fn hnf_int(m0: &IntMat) -> IntMatrixForm {
    let n = m0.len();
    let cols = if n > 0 { m0[0].len() } else { 0 };
    let mut m = m0.clone();
    let mut c = identity_int(cols);
    let mut picked: Vec<usize> = Vec::new();
    let mut deferred: Vec<usize> = Vec::new();
    for row in 0..n {
        let p = picked.len();
        if p >= cols || (p..cols).all(|j| m[row][j].is_zero()) {
            deferred.push(row);
            continue;
        }
        for j in p + 1..cols {
            col_bezout(&mut m, &mut c, row, p, j);
        }
        if m[row][p].is_negative() {
            negate_col(&mut m, &mut c, p);
        }
        picked.push(row);
    }
    let rank = picked.len();
    let order: Vec<usize> = picked.iter().chain(deferred.iter()).cloned().collect();
    let mut h: IntMat = order.iter().map(|&r| m[r].clone()).collect();
    // reduce below-diagonal entries of T modulo the pivot of their own row
    for i in 1..rank {
        for j in 0..i {
            if h[i][j].is_zero() {
                continue;
            }
            let q = -h[i][j].div_floor(&h[i][i]);
            add_col_multiple(&mut h, &mut c, j, i, &q);
        }
    }
    IntMatrixForm { left: perm_matrix(&order), right: c, form: h, rank }
}

pub(crate) fn row_bezout(m: &mut IntMat, l: &mut IntMat, col: usize, p: usize, i: usize) {
    let a = m[p][col].clone();
    let b = m[i][col].clone();
    if b.is_zero() {
        return;
    }
    if !a.is_zero() && (&b % &a).is_zero() {
        let q = -(&b / &a);
        add_row_multiple(m, l, i, p, &q);
        return;
    }
    let e = a.extended_gcd(&b);
    let (g, u, v) = (e.gcd, e.x, e.y);
    let (aq, bq) = (&a / &g, &b / &g);
    for mat in [&mut *m, &mut *l] {
        let w = mat[p].len();
        for j in 0..w {
            let np = &u * &mat[p][j] + &v * &mat[i][j];
            let ni = -&bq * &mat[p][j] + &aq * &mat[i][j];
            mat[p][j] = np;
            mat[i][j] = ni;
        }
    }
}

fn add_row_multiple(m: &mut IntMat, l: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    for mat in [&mut *m, &mut *l] {
        let w = mat[src].len();
        for j in 0..w {
            let t = q * &mat[src][j];
            mat[dst][j] += t;
        }
    }
}

/// Smith normal form: `L * m * R = D` with D diagonal, nonnegative, each
/// diagonal entry dividing the next; L and R unimodular.
pub fn snf_int(m0: &IntMat) -> IntMatrixForm {
    let n = m0.len();
    let cols = if n > 0 { m0[0].len() } else { 0 };
    let mut m = m0.clone();
    let mut l = identity_int(n);
    let mut r = identity_int(cols);
    let k = n.min(cols);
    let mut t = 0;
    while t < k {
        // bring some nonzero entry of the trailing block to (t, t)
        let pos = (t..n)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| m[i][j].abs());
        let (pi, pj) = match pos {
            Some(p) => p,
            None => break,
        };
        if pi != t {
            m.swap(pi, t);
            l.swap(pi, t);
        }
        if pj != t {
            for mat in [&mut m, &mut r] {
                for row in mat.iter_mut() {
                    row.swap(pj, t);
                }
            }
        }
        loop {
            for i in t + 1..n {
                row_bezout(&mut m, &mut l, t, t, i);
            }
            for j in t + 1..cols {
                col_bezout(&mut m, &mut r, t, t, j);
            }
            if (t + 1..n).all(|i| m[i][t].is_zero()) {
                break;
            }
        }
        // pivot must divide the whole trailing block
        let piv = m[t][t].clone();
        let bad = (t + 1..n)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &piv).is_zero());
        if let Some((i, _)) = bad {
            add_row_multiple(&mut m, &mut l, t, i, &BigInt::one());
            continue;
        }
        t += 1;
    }
    for i in 0..k {
        if m[i][i].is_negative() {
            for j in 0..cols {
                m[i][j] = -std::mem::take(&mut m[i][j]);
            }
            for j in 0..n {
                l[i][j] = -std::mem::take(&mut l[i][j]);
            }
        }
    }
    let rank = (0..k).take_while(|&i| !m[i][i].is_zero()).count();
    IntMatrixForm { left: l, right: r, form: m, rank }
}

#[derive(Debug, Clone)]
pub struct IntSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solve `a * x = b` over Z. Returns a particular solution together with a
/// basis of the integer kernel, or None when the system has no solution.
pub fn solve_int_linear(a: &IntMat, b: &[BigInt]) -> Option<IntSolution> {
    let n = a.len();
    let m = if n > 0 { a[0].len() } else { 0 };
    assert_eq!(b.len(), n, "right-hand side length mismatch");
    let f = snf_int(a);
    let mut y = vec![BigInt::zero(); m];
    for i in 0..n {
        let mut lb = BigInt::zero();
        for j in 0..n {
            lb += &f.left[i][j] * &b[j];
        }
        if i < f.rank {
            let d = &f.form[i][i];
            let (q, rem) = lb.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !lb.is_zero() {
            return None;
        }
    }
    let mut x = vec![BigInt::zero(); m];
    for i in 0..m {
        for j in 0..m {
            x[i] += &f.right[i][j] * &y[j];
        }
    }
    let kernel: Vec<Vec<BigInt>> = (f.rank..m)
        .map(|j| (0..m).map(|i| f.right[i][j].clone()).collect())
        .collect();
    Some(IntSolution { particular: x, kernel })
}

/// Canonical lower-triangular basis [[a,0],[b,c]] (a,c > 0, 0 <= b < a) of the
/// lattice in Z^2 spanned by the given rows. Returns None when the span has
/// rank < 2.
pub fn lattice_basis_2d(rows: &[(BigInt, BigInt)]) -> Option<[[BigInt; 2]; 2]> {
    let mut a = BigInt::zero(); // lattice vector (a, 0)
    let mut b = BigInt::zero(); // lattice vector (b, c)
    let mut c = BigInt::zero();
    for (x0, y0) in rows {
        let mut x = x0.clone();
        let y = y0.clone();
        if !y.is_zero() {
            if c.is_zero() {
                b = x.clone();
                c = y.clone();
                x = BigInt::zero();
            } else {
                let e = c.extended_gcd(&y);
                let (g, u, v) = (e.gcd, e.x, e.y);
                let (cq, yq) = (&c / &g, &y / &g);
                let nb = &u * &b + &v * &x;
                // the eliminated combination lands on the x-axis
                x = -&yq * &b + &cq * &x;
                b = nb;
                c = g;
            }
        }
        if !x.is_zero() {
            a = a.gcd(&x);
        }
    }
    if a.is_zero() || c.is_zero() {
        return None;
    }
    if c.is_negative() {
        b = -b;
        c = -c;
    }
    b = b.mod_floor(&a);
    Some([[a, BigInt::zero()], [b, c]])
}
