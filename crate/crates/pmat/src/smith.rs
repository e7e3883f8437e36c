//! Smith reduction in Krull dimension at most one: diagonalisation over a
//! quotient A/(delta) with certified elementary operations, the Bezout-domain
//! algorithm over Z derived from it, Smith forms of pseudo-matrices, module
//! invariants (torsion chain, Fitting ideals), and the change-of-pseudo-basis
//! statements for square and wide presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cert::comax_certificate;
use crate::domain::{Domain, Elt, Fe};
use crate::error::{Error, Result};
use crate::hermite::{complete_surjective, hermite, HermiteConfig, SurjectiveCompletion};
use crate::ideal::{
    ideal_eq, ideal_includes, ideal_intersect, ideal_mul_reduced, ideal_quotient,
    ideal_sum_reduced, FgIdeal,
};
use crate::intmat::{
    det_int, hnf_int, identity_int, inverse_unimodular, mat_mul_int, row_bezout, IntMat,
    IntMatrixForm,
};
use crate::pseudo::{
    determinantal_ideal, kmat_det, kmat_identity, kmat_rank, minor_ideal, pm_mul,
    pm_transpose_dual, pm_validate, PseudoMatrix,
};
use crate::quadratic::{express_elt, QuotCtx};

pub type EltMat = Vec<Vec<Elt>>;

pub fn elt_identity(n: usize) -> EltMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Elt::one() } else { Elt::zero() }).collect())
        .collect()
}

pub fn elt_mat_mul(dom: &Domain, a: &[Vec<Elt>], b: &[Vec<Elt>]) -> EltMat {
    let n = a.len();
    let k = b.len();
    let m = if k > 0 { b[0].len() } else { 0 };
    let mut out = vec![vec![Elt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = dom.add(&out[i][j], &dom.mul(&a[i][l], &b[l][j]));
            }
        }
    }
    out
}

/// Diagonalisation over A/(delta): `l * m * r = diag` in the quotient, with
/// `l` and `r` exact matrices over A of determinant +-1 (products of swaps and
/// transvections), and each diagonal residue dividing the next.
#[derive(Debug, Clone)]
pub struct QuotSmith {
    pub l: EltMat,
    pub r: EltMat,
    pub diag: Vec<Elt>,
}

struct QuotWork<'a> {
    ctx: &'a QuotCtx,
    cur: EltMat,
    l: EltMat,
    r: EltMat,
}

impl<'a> QuotWork<'a> {
    fn nrows(&self) -> usize {
        self.cur.len()
    }

    fn ncols(&self) -> usize {
        if self.cur.is_empty() { 0 } else { self.cur[0].len() }
    }

    fn col_add(&mut self, dst: usize, src: usize, q: &Elt) {
        if q.is_zero() {
            return;
        }
        let dom = &self.ctx.dom;
        for i in 0..self.nrows() {
            let t = self.ctx.mul(q, &self.cur[i][src]);
            self.cur[i][dst] = self.ctx.add(&self.cur[i][dst], &t);
        }
        for row in self.r.iter_mut() {
            let t = dom.mul(q, &row[src]);
            row[dst] = dom.add(&row[dst], &t);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        for row in self.cur.iter_mut() {
            row.swap(a, b);
        }
        for row in self.r.iter_mut() {
            row.swap(a, b);
        }
    }

    fn row_add(&mut self, dst: usize, src: usize, q: &Elt) {
        if q.is_zero() {
            return;
        }
        let dom = self.ctx.dom;
        for j in 0..self.ncols() {
            let t = self.ctx.mul(q, &self.cur[src][j]);
            self.cur[dst][j] = self.ctx.add(&self.cur[dst][j], &t);
        }
        let w = self.l[src].len();
        for j in 0..w {
            let t = dom.mul(q, &self.l[src][j]);
            self.l[dst][j] = dom.add(&self.l[dst][j], &t);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.cur.swap(a, b);
        self.l.swap(a, b);
    }

    /// Split 1 = s + t against the pair (a, b) and return the idempotent of s,
    /// so that e*b lands in (a) and (1-e)*a lands in (b) inside the quotient.
    fn splitting_idempotent(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        let cert = comax_certificate(&self.ctx.dom, &[a.clone(), b.clone()])?;
        let (e, _, _) = self.ctx.idempotent_of(&cert[0])?;
        Ok(e)
    }

    fn clear_entry_in_row(&mut self, p: usize, j: usize) -> Result<()> {
        let b = self.cur[p][j].clone();
        if self.ctx.is_zero(&b) {
            return Ok(());
        }
        let a = self.cur[p][p].clone();
        if self.ctx.is_zero(&a) {
            self.col_swap(p, j);
            return Ok(());
        }
        if let Some(q) = self.ctx.solve_mul(&a, &b) {
            self.col_add(j, p, &self.ctx.dom.neg(&q));
            return Ok(());
        }
        let e = self.splitting_idempotent(&a, &b)?;
        let one = Elt::one();
        let one_minus_e = self.ctx.sub(&one, &e);
        let eb = self.ctx.mul(&e, &b);
        let q1 = self
            .ctx
            .solve_mul(&a, &eb)
            .ok_or_else(|| Error::InvariantViolation("e*b must lie in (a)".into()))?;
        self.col_add(j, p, &self.ctx.dom.neg(&q1));
        // entry (p, j) is now (1-e)b; pull (1-e)a out of the pivot
        let c = self.cur[p][j].clone();
        let oa = self.ctx.mul(&one_minus_e, &self.cur[p][p]);
        let q2 = self
            .ctx
            .solve_mul(&c, &oa)
            .ok_or_else(|| Error::InvariantViolation("(1-e)a must lie in ((1-e)b)".into()))?;
        self.col_add(p, j, &self.ctx.dom.neg(&q2));
        // pivot = e*a; absorb the j column so the pivot generates <a, b>
        self.col_add(p, j, &one);
        // (1-e) * pivot equals the remaining entry: one transvection clears it
        self.col_add(j, p, &self.ctx.dom.neg(&one_minus_e));
        if !self.ctx.is_zero(&self.cur[p][j]) {
            return Err(Error::InvariantViolation("pair clearing left a residue".into()));
        }
        Ok(())
    }

    fn clear_entry_in_col(&mut self, p: usize, i: usize) -> Result<()> {
        let b = self.cur[i][p].clone();
        if self.ctx.is_zero(&b) {
            return Ok(());
        }
        let a = self.cur[p][p].clone();
        if self.ctx.is_zero(&a) {
            self.row_swap(p, i);
            return Ok(());
        }
        if let Some(q) = self.ctx.solve_mul(&a, &b) {
            self.row_add(i, p, &self.ctx.dom.neg(&q));
            return Ok(());
        }
        let e = self.splitting_idempotent(&a, &b)?;
        let one = Elt::one();
        let one_minus_e = self.ctx.sub(&one, &e);
        let eb = self.ctx.mul(&e, &b);
        let q1 = self
            .ctx
            .solve_mul(&a, &eb)
            .ok_or_else(|| Error::InvariantViolation("e*b must lie in (a)".into()))?;
        self.row_add(i, p, &self.ctx.dom.neg(&q1));
        let c = self.cur[i][p].clone();
        let oa = self.ctx.mul(&one_minus_e, &self.cur[p][p]);
        let q2 = self
            .ctx
            .solve_mul(&c, &oa)
            .ok_or_else(|| Error::InvariantViolation("(1-e)a must lie in ((1-e)b)".into()))?;
        self.row_add(p, i, &self.ctx.dom.neg(&q2));
        self.row_add(p, i, &one);
        self.row_add(i, p, &self.ctx.dom.neg(&one_minus_e));
        if !self.ctx.is_zero(&self.cur[i][p]) {
            return Err(Error::InvariantViolation("pair clearing left a residue".into()));
        }
        Ok(())
    }

    fn clear_block(&mut self, p: usize) -> Result<()> {
        let (n, m) = (self.nrows(), self.ncols());
        for _ in 0..200 {
            for j in p + 1..m {
                self.clear_entry_in_row(p, j)?;
            }
            for i in p + 1..n {
                self.clear_entry_in_col(p, i)?;
            }
            let row_clean = (p + 1..m).all(|j| self.ctx.is_zero(&self.cur[p][j]));
            let col_clean = (p + 1..n).all(|i| self.ctx.is_zero(&self.cur[i][p]));
            if row_clean && col_clean {
                return Ok(());
            }
        }
        Err(Error::IterationLimit("block clearing in the quotient".into()))
    }
}

pub fn smith_zero_dim(ctx: &QuotCtx, m: &[Vec<Elt>]) -> Result<QuotSmith> {
    let n = m.len();
    let mm = if n > 0 { m[0].len() } else { 0 };
    let cur: EltMat = m.iter().map(|r| r.iter().map(|x| ctx.reduce(x)).collect()).collect();
    let mut w = QuotWork { ctx, cur, l: elt_identity(n), r: elt_identity(mm) };
    let k = n.min(mm);
    for p in 0..k {
        w.clear_block(p)?;
    }
    // enforce the divisibility chain on the diagonal
    let mut guard = 0;
    'outer: loop {
        for i in 0..k.saturating_sub(1) {
            let di = w.cur[i][i].clone();
            let dj = w.cur[i + 1][i + 1].clone();
            if ctx.is_zero(&dj) || ctx.solve_mul(&di, &dj).is_some() {
                continue;
            }
            w.row_add(i, i + 1, &Elt::one());
            for p in i..k {
                w.clear_block(p)?;
            }
            guard += 1;
            if guard > 500 {
                return Err(Error::IterationLimit("diagonal divisibility chain".into()));
            }
            continue 'outer;
        }
        break;
    }
    let diag: Vec<Elt> = (0..k).map(|i| w.cur[i][i].clone()).collect();
    let lmr = elt_mat_mul(&ctx.dom, &elt_mat_mul(&ctx.dom, &w.l, m), &w.r);
    for i in 0..n {
        for j in 0..mm {
            let expect = if i == j && i < k { diag[i].clone() } else { Elt::zero() };
            if !ctx.eq(&lmr[i][j], &expect) {
                return Err(Error::InvariantViolation("L M R is not the diagonal form".into()));
            }
        }
    }
    Ok(QuotSmith { l: w.l, r: w.r, diag })
}

/// Smith form over Z computed through the dimension-zero algorithm: bring the
/// matrix to [[T, 0], [0, 0]], diagonalise T modulo d = det T, lift, and peel
/// off the invariant factors gcd(a_i, d).  Agrees with the classical form.
pub fn smith_bezout_dim1(m: &IntMat) -> Result<IntMatrixForm> {
    let n = m.len();
    let cols = if n > 0 { m[0].len() } else { 0 };
    let hf = hnf_int(m);
    let r = hf.rank;
    let mut f = hf.form;
    let mut left = hf.left;
    let right = hf.right;
    for i in r..n {
        for j in (0..r).rev() {
            if !f[i][j].is_zero() {
                row_bezout(&mut f, &mut left, j, j, i);
            }
        }
    }
    if r == 0 {
        return Ok(IntMatrixForm { left, right, form: f, rank: 0 });
    }
    let mut d = BigInt::one();
    for i in 0..r {
        d *= &f[i][i];
    }
    let ctx = QuotCtx::new(Domain::Int, Elt::from_int(d.clone()))?;
    let t: EltMat = (0..r)
        .map(|i| (0..r).map(|j| Elt::from_int(f[i][j].clone())).collect())
        .collect();
    let qs = smith_zero_dim(&ctx, &t)?;
    let lt: IntMat = qs.l.iter().map(|row| row.iter().map(|x| x.x.clone()).collect()).collect();
    let rt: IntMat = qs.r.iter().map(|row| row.iter().map(|x| x.x.clone()).collect()).collect();
    let tint: IntMat = (0..r).map(|i| f[i][..r].to_vec()).collect();
    let mprime = mat_mul_int(&mat_mul_int(&lt, &tint), &rt);
    let c: Vec<BigInt> = (0..r).map(|i| qs.diag[i].x.gcd(&d)).collect();
    let mut c1 = mprime.clone();
    for i in 0..r {
        for j in 0..r {
            let (q, rem) = c1[i][j].div_rem(&c[i]);
            if !rem.is_zero() {
                return Err(Error::InvariantViolation(
                    "invariant factor does not divide its row".into(),
                ));
            }
            c1[i][j] = q;
        }
    }
    if det_int(&c1).abs() != BigInt::one() {
        return Err(Error::InvariantViolation("peeled cofactor is not unimodular".into()));
    }
    let c1inv = inverse_unimodular(&c1)?;
    let rpart = mat_mul_int(&rt, &c1inv);
    // embed into the full format
    let mut lfull = identity_int(n);
    let mut rfull = identity_int(cols);
    for i in 0..r {
        for j in 0..r {
            lfull[i][j] = lt[i][j].clone();
            rfull[i][j] = rpart[i][j].clone();
        }
    }
    let lfull = mat_mul_int(&lfull, &left);
    let rfull = mat_mul_int(&right, &rfull);
    let mut form = vec![vec![BigInt::zero(); cols]; n];
    for i in 0..r {
        form[i][i] = c[i].clone();
    }
    if mat_mul_int(&mat_mul_int(&lfull, m), &rfull) != form {
        return Err(Error::InvariantViolation("L M R is not the Smith form".into()));
    }
    for i in 0..r.saturating_sub(1) {
        if !(&c[i + 1] % &c[i]).is_zero() {
            return Err(Error::InvariantViolation("invariant factors do not chain".into()));
        }
    }
    Ok(IntMatrixForm { left: lfull, right: rfull, form, rank: r })
}

/// Smith form of a pseudo-matrix: L A C diagonal with the elementary divisor
/// ideals t_ii e_i h_i^{-1} forming a decreasing chain.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub l: PseudoMatrix,
    pub c: PseudoMatrix,
    pub form: PseudoMatrix,
    pub rank: usize,
    pub divisors: Vec<FgIdeal>,
}

fn pm_is_diagonal(a: &PseudoMatrix) -> bool {
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if i != j && !a.entries[i][j].is_zero() {
                return false;
            }
        }
    }
    true
}

fn divisor_at(a: &PseudoMatrix, i: usize) -> Result<FgIdeal> {
    minor_ideal(a, &[i], &[i])
}

/// Write 1 = s + t with s in `u` and t in `v` (both already intersected with
/// the ring by the caller), using ring coefficients on the listed generators.
fn split_one(dom: &Domain, u: &FgIdeal, v: &FgIdeal) -> Option<(Fe, Fe)> {
    let gu = u.gens_fe();
    let gv = v.gens_fe();
    let mut den = BigInt::one();
    for g in gu.iter().chain(gv.iter()) {
        den = den.lcm(&g.den);
    }
    let cleared: Vec<Elt> = gu
        .iter()
        .chain(gv.iter())
        .map(|g| dom.scale(&g.num, &(&den / &g.den)))
        .collect();
    let coef = express_elt(dom, &cleared, &Elt::new(den.clone(), BigInt::zero()))?;
    let mut s = Fe::zero();
    for (c, g) in coef.iter().take(gu.len()).zip(&gu) {
        s = dom.fe_add(&s, &dom.fe_mul(&Fe::from_elt(c.clone()), g));
    }
    let t = dom.fe_sub(&Fe::one(), &s);
    Some((s, t))
}

/// Try to repair the divisor chain at adjacent diagonal places (i, i+1) with
/// the two-by-two sum/intersection transform, optionally after rescaling the
/// columns by a generator element.  Returns the updated (l, c, cur) on
/// success.
fn chain_fix_pair(
    l: &PseudoMatrix,
    c: &PseudoMatrix,
    cur: &PseudoMatrix,
    i: usize,
) -> Result<Option<(PseudoMatrix, PseudoMatrix, PseudoMatrix)>> {
    let dom = cur.dom;
    let j = i + 1;
    let x1 = cur.entries[i][i].clone();
    let x2 = cur.entries[j][j].clone();
    let h1 = cur.row_ideals[i].clone();
    let h2 = cur.row_ideals[j].clone();
    let one = FgIdeal::one(dom);
    let mut candidates: Vec<Fe> = vec![Fe::one()];
    for q in [ideal_quotient(&h2, &h1)?, ideal_quotient(&h1, &h2)?] {
        for g in q.gens_fe() {
            if !g.is_zero() {
                candidates.push(g);
            }
        }
    }
    for g in candidates {
        let xg = dom.fe_mul(&x1, &g);
        let mu = dom.fe_div(&xg, &x2)?;
        let f1 = cur.col_ideals[i].scale_fe(&dom.fe_inv(&g)?);
        let f2 = cur.col_ideals[j].scale_fe(&dom.fe_inv(&mu)?);
        let u = ideal_intersect(
            &ideal_intersect(&ideal_quotient(&f2, &f1)?, &ideal_quotient(&h2, &h1)?)?,
            &one,
        )?
        .compress();
        let v = ideal_intersect(
            &ideal_intersect(&ideal_quotient(&f1, &f2)?, &ideal_quotient(&h1, &h2)?)?,
            &one,
        )?
        .compress();
        let (s, t) = match split_one(&dom, &u, &v) {
            Some(st) => st,
            None => continue,
        };
        // scaling of the two columns so both diagonal entries become x1 * g
        let mut scols = cur.col_ideals.clone();
        scols[i] = f1.clone();
        scols[j] = f2.clone();
        let mut sentries = kmat_identity(cur.ncols());
        sentries[i][i] = g.clone();
        sentries[j][j] = mu.clone();
        let scale = PseudoMatrix::new(dom, cur.col_ideals.clone(), scols.clone(), sentries)?;
        // right factor [[t, -1], [s, 1]] over (f1 + f2, f1 cap f2)
        let fsum = ideal_sum_reduced(&f1, &f2)?;
        let fcap = ideal_intersect(&f1, &f2)?.compress();
        let mut ccols = scols.clone();
        ccols[i] = fsum;
        ccols[j] = fcap;
        let mut centries = kmat_identity(cur.ncols());
        centries[i][i] = t.clone();
        centries[i][j] = dom.fe_neg(&Fe::one());
        centries[j][i] = s.clone();
        centries[j][j] = Fe::one();
        let cfix = PseudoMatrix::new(dom, scols, ccols, centries)?;
        // left factor [[1, 1], [-s, t]] over (h1 + h2, h1 cap h2)
        let hsum = ideal_sum_reduced(&h1, &h2)?;
        let hcap = ideal_intersect(&h1, &h2)?.compress();
        let mut lrows = cur.row_ideals.clone();
        lrows[i] = hsum;
        lrows[j] = hcap;
        let mut lentries = kmat_identity(cur.nrows());
        lentries[i][i] = Fe::one();
        lentries[i][j] = Fe::one();
        lentries[j][i] = dom.fe_neg(&s);
        lentries[j][j] = t.clone();
        let lfix = PseudoMatrix::new(dom, lrows, cur.row_ideals.clone(), lentries)?;
        if pm_validate(&scale).is_err() || pm_validate(&cfix).is_err() || pm_validate(&lfix).is_err()
        {
            continue;
        }
        let right = pm_mul(&scale, &cfix)?;
        let new_cur = pm_mul(&pm_mul(&lfix, cur)?, &right)?;
        if !pm_is_diagonal(&new_cur) {
            return Err(Error::InvariantViolation("chain fix broke diagonality".into()));
        }
        let new_l = pm_mul(&lfix, l)?;
        let new_c = pm_mul(c, &right)?;
        return Ok(Some((new_l, new_c, new_cur)));
    }
    Ok(None)
}

/// Smith form over the Dedekind domain by alternating column and row Hermite
/// passes, followed by the two-by-two chain repair on the diagonal.  The
/// repair step does not cover every constellation of ideals; when it runs out
/// of candidates a diagnostic iteration-limit error is returned.
pub fn smith_pseudo_dedekind(a: &PseudoMatrix, cfg: &HermiteConfig) -> Result<SmithForm> {
    let dom = a.dom;
    let mut cur = a.clone();
    let mut l = PseudoMatrix::identity(a.row_ideals.clone(), dom);
    let mut c = PseudoMatrix::identity(a.col_ideals.clone(), dom);
    let mut diagonal = false;
    for _ in 0..200 {
        if pm_is_diagonal(&cur) {
            diagonal = true;
            break;
        }
        let hf = hermite(&cur, cfg)?;
        l = pm_mul(&hf.l, &l)?;
        c = pm_mul(&c, &hf.c)?;
        cur = hf.h;
        if pm_is_diagonal(&cur) {
            diagonal = true;
            break;
        }
        // row pass through the dual transpose
        let dual = pm_transpose_dual(&cur)?;
        let hf2 = hermite(&dual, cfg)?;
        let lq = pm_transpose_dual(&hf2.c)?;
        let rq = pm_transpose_dual(&hf2.l)?;
        cur = pm_mul(&pm_mul(&lq, &cur)?, &rq)?;
        l = pm_mul(&lq, &l)?;
        c = pm_mul(&c, &rq)?;
    }
    if !diagonal {
        return Err(Error::IterationLimit("alternating Hermite passes".into()));
    }
    let rank = (0..cur.nrows().min(cur.ncols()))
        .take_while(|&i| !cur.entries[i][i].is_zero())
        .count();
    // repair the divisor chain
    let mut guard = 0;
    'scan: loop {
        for i in 0..rank.saturating_sub(1) {
            let di = divisor_at(&cur, i)?;
            let dj = divisor_at(&cur, i + 1)?;
            if ideal_includes(&di, &dj) {
                continue;
            }
            match chain_fix_pair(&l, &c, &cur, i)? {
                Some((nl, nc, ncur)) => {
                    l = nl;
                    c = nc;
                    cur = ncur;
                }
                None => {
                    return Err(Error::IterationLimit(
                        "diagonal chain repair found no comaximal splitting".into(),
                    ))
                }
            }
            guard += 1;
            if guard > 100 {
                return Err(Error::IterationLimit("diagonal chain repair".into()));
            }
            continue 'scan;
        }
        break;
    }
    let lac = pm_mul(&pm_mul(&l, a)?, &c)?;
    if lac.entries != cur.entries {
        return Err(Error::InvariantViolation("L A C does not match the Smith form".into()));
    }
    let mut divisors = Vec::with_capacity(rank);
    for i in 0..rank {
        divisors.push(divisor_at(&cur, i)?);
    }
    Ok(SmithForm { l, c, form: cur, rank, divisors })
}

/// Invariants of the cokernel of a pseudo-matrix presentation: free rank plus
/// the decreasing chain of torsion ideals (unit entries pruned), read off the
/// quotients of consecutive determinantal ideals.
#[derive(Debug, Clone)]
pub struct ModuleStructure {
    pub free_rank: usize,
    pub invariant_ideals: Vec<FgIdeal>,
}

pub fn torsion_structure(m: &PseudoMatrix) -> Result<ModuleStructure> {
    let dom = m.dom;
    let entries_fe = &m.entries;
    let r = kmat_rank(&dom, entries_fe);
    let mut invariants = Vec::new();
    let mut prev = FgIdeal::one(dom);
    for k in 1..=r {
        let dk = determinantal_ideal(m, k as isize)?;
        let ak = ideal_mul_reduced(&dk, &crate::ideal::ideal_inverse(&prev.compress())?)?;
        if !invariants.is_empty() {
            let last: &FgIdeal = invariants.last().unwrap();
            if !ideal_includes(last, &ak) {
                return Err(Error::InvariantViolation(
                    "determinantal quotients do not form a chain".into(),
                ));
            }
        }
        if !ak.is_one() {
            invariants.push(ak);
        }
        prev = dk;
    }
    Ok(ModuleStructure { free_rank: m.nrows() - r, invariant_ideals: invariants })
}

/// Fitting ideals of the torsion part: F_k = product of the first (l - k)
/// chain ideals, ending at the unit ideal.  Free rank contributes leading
/// zero ideals; callers compare against the determinantal chain directly.
pub fn fitting_ideals(ms: &ModuleStructure, dom: &Domain) -> Result<Vec<FgIdeal>> {
    let l = ms.invariant_ideals.len();
    let mut out = vec![FgIdeal::zero(*dom); ms.free_rank];
    for k in 0..=l {
        let mut acc = FgIdeal::one(*dom);
        for a in &ms.invariant_ideals[..l - k] {
            acc = ideal_mul_reduced(&acc, a)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// New pseudo-basis for a square presentation over the ring: transforms L, C
/// with L M C the identity matrix on column ideals a_1 .. a_n, the invariant
/// ideals <d_i, det M> of the cokernel, whose product is <det M>.
#[derive(Debug, Clone)]
pub struct ChangeOfPseudoBasis {
    pub l: PseudoMatrix,
    pub c: PseudoMatrix,
    pub form: PseudoMatrix,
    pub invariant_ideals: Vec<FgIdeal>,
}

fn classical_pm(dom: Domain, m: &[Vec<Elt>]) -> Result<PseudoMatrix> {
    let n = m.len();
    let cols = if n > 0 { m[0].len() } else { 0 };
    PseudoMatrix::new(
        dom,
        vec![FgIdeal::one(dom); n],
        vec![FgIdeal::one(dom); cols],
        m.iter().map(|r| r.iter().map(|x| Fe::from_elt(x.clone())).collect()).collect(),
    )
}

fn exact_det(dom: &Domain, m: &[Vec<Elt>]) -> Result<Elt> {
    let fe: Vec<Vec<Fe>> =
        m.iter().map(|r| r.iter().map(|x| Fe::from_elt(x.clone())).collect()).collect();
    let d = kmat_det(dom, &fe);
    if !d.den.is_one() {
        return Err(Error::InvariantViolation("integer determinant has a denominator".into()));
    }
    Ok(d.num)
}

pub fn smith_change_pseudobasis_square(dom: Domain, m: &[Vec<Elt>]) -> Result<ChangeOfPseudoBasis> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("square matrix required".into()));
    }
    let d = exact_det(&dom, m)?;
    if d.is_zero() {
        return Err(Error::Precondition("zero determinant: the cokernel is not torsion".into()));
    }
    let ctx = QuotCtx::new(dom, d.clone())?;
    let qs = smith_zero_dim(&ctx, m)?;
    let mprime = elt_mat_mul(&dom, &elt_mat_mul(&dom, &qs.l, m), &qs.r);
    let ideals: Vec<FgIdeal> = qs
        .diag
        .iter()
        .map(|a| FgIdeal::from_elts(dom, &[a.clone(), d.clone()]))
        .collect::<Result<_>>()?;
    let mut prod = FgIdeal::one(dom);
    for a in &ideals {
        prod = ideal_mul_reduced(&prod, a)?;
    }
    if !ideal_eq(&prod, &FgIdeal::principal(dom, &Fe::from_elt(d.clone()))?) {
        return Err(Error::InvariantViolation(
            "invariant ideals do not multiply to the determinant".into(),
        ));
    }
    let e = PseudoMatrix::new(
        dom,
        ideals.clone(),
        vec![FgIdeal::one(dom); n],
        mprime.iter().map(|r| r.iter().map(|x| Fe::from_elt(x.clone())).collect()).collect(),
    )?;
    pm_validate(&e)?;
    let einv = crate::pseudo::pm_inverse(&e)?;
    let lpm = classical_pm(dom, &qs.l)?;
    let rpm = classical_pm(dom, &qs.r)?;
    let c = pm_mul(&rpm, &einv)?;
    let mhat = classical_pm(dom, m)?;
    let form = pm_mul(&pm_mul(&lpm, &mhat)?, &c)?;
    if form.entries != kmat_identity(n) {
        return Err(Error::InvariantViolation("normal form is not the identity".into()));
    }
    Ok(ChangeOfPseudoBasis { l: lpm, c, form, invariant_ideals: ideals })
}

/// Wide variant for a full-row-rank n x m presentation: the image sits inside
/// the ambient module as a_1 .. a_n on a new pseudo-basis, the normal form is
/// [I_n | 0], and the product of the a_i is the n-th determinantal ideal.
pub struct WideChange {
    pub l: PseudoMatrix,
    pub c: PseudoMatrix,
    pub form: PseudoMatrix,
    pub invariant_ideals: Vec<FgIdeal>,
    pub completion: SurjectiveCompletion,
}

pub fn smith_change_pseudobasis_wide(
    dom: Domain,
    m: &[Vec<Elt>],
    cfg: &HermiteConfig,
) -> Result<WideChange> {
    let n = m.len();
    let cols = if n > 0 { m[0].len() } else { 0 };
    if n == 0 || n > cols {
        return Err(Error::DimensionMismatch("need at least as many columns as rows".into()));
    }
    let fe_mat: Vec<Vec<Fe>> =
        m.iter().map(|r| r.iter().map(|x| Fe::from_elt(x.clone())).collect()).collect();
    if kmat_rank(&dom, &fe_mat) < n {
        return Err(Error::Negative("presentation does not have full row rank".into()));
    }
    // delta: the determinant of any invertible n x n column selection
    let mut delta = None;
    for combo in crate::pseudo::combinations(cols, n) {
        let sub: Vec<Vec<Elt>> =
            (0..n).map(|i| combo.iter().map(|&j| m[i][j].clone()).collect()).collect();
        let d = exact_det(&dom, &sub)?;
        if !d.is_zero() {
            delta = Some(d);
            break;
        }
    }
    let delta = delta.ok_or_else(|| Error::Negative("no invertible maximal minor".into()))?;
    let ctx = QuotCtx::new(dom, delta.clone())?;
    let qs = smith_zero_dim(&ctx, m)?;
    let mprime = elt_mat_mul(&dom, &elt_mat_mul(&dom, &qs.l, m), &qs.r);
    let ideals: Vec<FgIdeal> = qs
        .diag
        .iter()
        .map(|a| FgIdeal::from_elts(dom, &[a.clone(), delta.clone()]))
        .collect::<Result<_>>()?;
    let mhat = classical_pm(dom, m)?;
    let mut prod = FgIdeal::one(dom);
    for a in &ideals {
        prod = ideal_mul_reduced(&prod, a)?;
    }
    if !ideal_eq(&prod, &determinantal_ideal(&mhat, n as isize)?) {
        return Err(Error::InvariantViolation(
            "invariant ideals do not multiply to the maximal determinantal ideal".into(),
        ));
    }
    let e = PseudoMatrix::new(
        dom,
        ideals.clone(),
        vec![FgIdeal::one(dom); cols],
        mprime.iter().map(|r| r.iter().map(|x| Fe::from_elt(x.clone())).collect()).collect(),
    )?;
    pm_validate(&e)?;
    let sc = complete_surjective(&e, cfg)?;
    let lpm = classical_pm(dom, &qs.l)?;
    let rpm = classical_pm(dom, &qs.r)?;
    let c = pm_mul(&rpm, &sc.binv)?;
    let form = pm_mul(&pm_mul(&lpm, &mhat)?, &c)?;
    for i in 0..n {
        for j in 0..cols {
            let want_one = i == j;
            if form.entries[i][j].is_one() != want_one
                || (!want_one && !form.entries[i][j].is_zero())
            {
                return Err(Error::InvariantViolation("normal form is not [I | 0]".into()));
            }
        }
    }
    Ok(WideChange { l: lpm, c, form, invariant_ideals: ideals, completion: sc })
}

/// When (a) = (b) in the quotient, produce a unit w with w b = a, together
/// with its inverse.  Returns None when the two residues are not associated.
pub fn associated_in_quotient(ctx: &QuotCtx, a: &Elt, b: &Elt) -> Result<Option<(Elt, Elt)>> {
    let u = match ctx.solve_mul(b, a) {
        Some(u) => u,
        None => return Ok(None),
    };
    let v = match ctx.solve_mul(a, b) {
        Some(v) => v,
        None => return Ok(None),
    };
    let one = Elt::one();
    let x = ctx.sub(&ctx.mul(&u, &v), &one);
    let (e, k, _) = ctx.idempotent_of(&x)?;
    let w = ctx.add(&ctx.mul(&u, &ctx.sub(&one, &e)), &e);
    // geometric sum z with (1 + x) z = 1 - (-x)^k, killed by (1 - e)
    let mut z = Elt::zero();
    let mut pw = one.clone();
    let nx = ctx.dom.neg(&x);
    for _ in 0..k {
        z = ctx.add(&z, &pw);
        pw = ctx.mul(&pw, &nx);
    }
    let winv = ctx.add(&ctx.mul(&ctx.mul(&v, &z), &ctx.sub(&one, &e)), &e);
    if !ctx.eq(&ctx.mul(&w, b), a) || !ctx.eq(&ctx.mul(&w, &winv), &one) {
        return Err(Error::InvariantViolation("associate witness failed verification".into()));
    }
    Ok(Some((w, winv)))
}

/// diag(a_1 .. a_n) and diag(u_1 a_1 .. u_n a_n) are connected by elementary
/// operations whenever the a_i chain by divisibility, the u_i are units of
/// the quotient and their product is 1.  Returns the exact transforms
/// (products of transvections, determinant 1 over the ring).
pub fn unit_diag_equiv(
    ctx: &QuotCtx,
    diag: &[Elt],
    units: &[Elt],
) -> Result<(EltMat, EltMat)> {
    let n = diag.len();
    if units.len() != n || n == 0 {
        return Err(Error::DimensionMismatch("one unit per diagonal entry".into()));
    }
    let one = Elt::one();
    let mut uprod = one.clone();
    for u in units {
        uprod = ctx.mul(&uprod, u);
    }
    if !ctx.eq(&uprod, &one) {
        return Err(Error::Precondition("the product of the units must be 1".into()));
    }
    let mut cur = vec![vec![Elt::zero(); n]; n];
    for (i, a) in diag.iter().enumerate() {
        cur[i][i] = ctx.reduce(a);
    }
    let mut w = QuotWork { ctx, cur, l: elt_identity(n), r: elt_identity(n) };
    let mut s = one.clone();
    for i in 0..n - 1 {
        s = ctx.mul(&s, &units[i]);
        let v = ctx
            .inv(&s)
            .ok_or_else(|| Error::Precondition("unit is not invertible in the quotient".into()))?;
        let ai = w.cur[i][i].clone();
        let b = w.cur[i + 1][i + 1].clone();
        let cq = ctx
            .solve_mul(&ai, &b)
            .ok_or_else(|| Error::Precondition("diagonal entries do not chain".into()))?;
        w.col_add(i + 1, i, &ctx.sub(&s, &one));
        w.col_add(i, i + 1, &one);
        w.row_add(i + 1, i, &ctx.dom.neg(&ctx.mul(&cq, &v)));
        w.col_add(i + 1, i, &ctx.sub(&v, &one));
    }
    for i in 0..n {
        let want = ctx.mul(&units[i], &ctx.reduce(&diag[i]));
        if !ctx.eq(&w.cur[i][i], &want) {
            return Err(Error::InvariantViolation("twisted diagonal is wrong".into()));
        }
        for j in 0..n {
            if i != j && !ctx.is_zero(&w.cur[i][j]) {
                return Err(Error::InvariantViolation("twisting broke diagonality".into()));
            }
        }
    }
    Ok((w.l, w.r))
}
