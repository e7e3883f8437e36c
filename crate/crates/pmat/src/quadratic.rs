//! Quadratic-order specifics: Z-basis of a finitely generated ideal, the
//! comaximality certificate solver, and arithmetic in quotients O/(delta).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::domain::{Domain, Elt};
use crate::error::{Error, Result};
use crate::intmat::{lattice_basis_2d, solve_int_linear, IntMat};

/// Coordinates of a * w in the (1, w) basis.
pub fn times_omega(dom: &Domain, a: &Elt) -> Elt {
    match dom {
        Domain::Int => panic!("times_omega on the integer domain"),
        Domain::Quadratic(_) => dom.mul(a, &Elt::from_pair(0, 1)),
    }
}

/// Canonical HNF Z-basis [[a,0],[b,c]] of the O-ideal generated by `gens`
/// (coordinates in the (1, w) basis). Errors when all generators vanish.
pub fn ideal_zbasis(dom: &Domain, gens: &[Elt]) -> Result<[[BigInt; 2]; 2]> {
    let mut rows: Vec<(BigInt, BigInt)> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        rows.push((g.x.clone(), g.y.clone()));
        let gw = times_omega(dom, g);
        rows.push((gw.x, gw.y));
    }
    if rows.is_empty() {
        return Err(Error::ZeroIdeal("zbasis of the zero ideal".into()));
    }
    lattice_basis_2d(&rows)
        .ok_or_else(|| Error::InvariantViolation("nonzero O-ideal with Z-rank < 2".into()))
}

/// |O / a| for the ideal generated by `gens`.
pub fn ideal_norm(dom: &Domain, gens: &[Elt]) -> Result<BigInt> {
    let b = ideal_zbasis(dom, gens)?;
    Ok(&b[0][0] * &b[1][1])
}

/// The two HNF basis vectors as ring elements; these generate the same ideal.
pub fn zbasis_gens(dom: &Domain, gens: &[Elt]) -> Result<Vec<Elt>> {
    let b = ideal_zbasis(dom, gens)?;
    Ok(vec![
        Elt::new(b[0][0].clone(), b[0][1].clone()),
        Elt::new(b[1][0].clone(), b[1][1].clone()),
    ])
}

/// Solve sum u_i * g_i = target with u_i in the ring, when possible.
pub fn express_elt(dom: &Domain, gens: &[Elt], target: &Elt) -> Option<Vec<Elt>> {
    match dom {
        Domain::Int => {
            let mut g = BigInt::zero();
            let mut coef: Vec<BigInt> = Vec::with_capacity(gens.len());
            for a in gens {
                let e = g.extended_gcd(&a.x);
                for c in coef.iter_mut() {
                    *c *= &e.x;
                }
                coef.push(e.y);
                g = e.gcd;
            }
            if g.is_zero() {
                return if target.is_zero() {
                    Some(vec![Elt::zero(); gens.len()])
                } else {
                    None
                };
            }
            let (q, r) = target.x.div_rem(&g);
            if !r.is_zero() {
                return None;
            }
            Some(coef.into_iter().map(|c| Elt::from_int(c * &q)).collect())
        }
        Domain::Quadratic(_) => {
            // unknowns are the (x, y) coordinates of each u_i
            let n = gens.len();
            let mut a: IntMat = vec![Vec::with_capacity(2 * n), Vec::with_capacity(2 * n)];
            for g in gens {
                let gw = times_omega(dom, g);
                a[0].push(g.x.clone());
                a[1].push(g.y.clone());
                a[0].push(gw.x);
                a[1].push(gw.y);
            }
            let sol = solve_int_linear(&a, &[target.x.clone(), target.y.clone()])?;
            Some(
                (0..n)
                    .map(|i| Elt::new(sol.particular[2 * i].clone(), sol.particular[2 * i + 1].clone()))
                    .collect(),
            )
        }
    }
}

/// Solve sum u_i * g_i = 1 with u_i in the ring, if 1 lies in the ideal.
pub fn express_one(dom: &Domain, gens: &[Elt]) -> Option<Vec<Elt>> {
    express_elt(dom, gens, &Elt::one())
}

/// Comaximality certificate over a maximal quadratic order.
///
/// With N the ideal norm, every valid gamma_i lives in (1/N) conj(a); writing
/// gamma_i in the HNF basis of that lattice turns the defining constraints
/// into the two coordinate equations of sum gamma_i a_i = 1, one integer
/// linear system with denominator exactly N.
pub fn certificate_quadratic(dom: &Domain, gens: &[Elt]) -> Result<Vec<Elt>> {
    let live: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    if live.is_empty() {
        return Err(Error::ZeroIdeal("certificate for the zero ideal".into()));
    }
    let norm = ideal_norm(dom, gens)?;
    let conj_gens: Vec<Elt> = live.iter().map(|&i| dom.conj(&gens[i])).collect();
    let cb = ideal_zbasis(dom, &conj_gens)?;
    let beta = [
        Elt::new(cb[0][0].clone(), cb[0][1].clone()),
        Elt::new(cb[1][0].clone(), cb[1][1].clone()),
    ];
    // column pair per live generator: coordinates of beta_1 a_i and beta_2 a_i
    let mut a: IntMat = vec![Vec::new(), Vec::new()];
    for &i in &live {
        for b in &beta {
            let p = dom.mul(b, &gens[i]);
            a[0].push(p.x);
            a[1].push(p.y);
        }
    }
    let sol = solve_int_linear(&a, &[norm.clone(), BigInt::zero()]).ok_or_else(|| {
        Error::InvariantViolation("comaximality system unsolvable in a maximal order".into())
    })?;
    let mut cert = vec![Elt::zero(); gens.len()];
    for (k, &i) in live.iter().enumerate() {
        let u = &sol.particular[2 * k];
        let v = &sol.particular[2 * k + 1];
        let gamma_num = dom.add(&dom.scale(&beta[0], u), &dom.scale(&beta[1], v));
        let s_num = dom.mul(&gamma_num, &gens[i]);
        let (qx, rx) = s_num.x.div_rem(&norm);
        let (qy, ry) = s_num.y.div_rem(&norm);
        if !rx.is_zero() || !ry.is_zero() {
            return Err(Error::InvariantViolation(
                "certificate entry fell outside the order".into(),
            ));
        }
        cert[i] = Elt::new(qx, qy);
    }
    Ok(cert)
}

/// Arithmetic in O/(delta) (or Z/(delta)), with canonical residues.
#[derive(Debug, Clone)]
pub struct QuotCtx {
    pub dom: Domain,
    pub delta: Elt,
    basis: QuotBasis,
}

#[derive(Debug, Clone)]
enum QuotBasis {
    Int(BigInt),
    Quad([[BigInt; 2]; 2]),
}

impl QuotCtx {
    pub fn new(dom: Domain, delta: Elt) -> Result<QuotCtx> {
        if delta.is_zero() {
            return Err(Error::ZeroIdeal("quotient by the zero ideal".into()));
        }
        let basis = match dom {
            Domain::Int => QuotBasis::Int(delta.x.abs()),
            Domain::Quadratic(_) => QuotBasis::Quad(ideal_zbasis(&dom, &[delta.clone()])?),
        };
        Ok(QuotCtx { dom, delta, basis })
    }

    pub fn reduce(&self, a: &Elt) -> Elt {
        match &self.basis {
            QuotBasis::Int(m) => Elt::from_int(a.x.mod_floor(m)),
            QuotBasis::Quad(b) => {
                let q = a.y.div_floor(&b[1][1]);
                let x = &a.x - &q * &b[1][0];
                let y = &a.y - &q * &b[1][1];
                Elt::new(x.mod_floor(&b[0][0]), y)
            }
        }
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        self.reduce(&self.dom.add(a, b))
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        self.reduce(&self.dom.sub(a, b))
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        self.reduce(&self.dom.mul(a, b))
    }

    pub fn is_zero(&self, a: &Elt) -> bool {
        self.reduce(a).is_zero()
    }

    pub fn eq(&self, a: &Elt, b: &Elt) -> bool {
        self.is_zero(&self.dom.sub(a, b))
    }

    pub fn pow(&self, a: &Elt, mut e: u64) -> Elt {
        let mut base = self.reduce(a);
        let mut acc = self.reduce(&Elt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Some x with b * x = t in the quotient, when one exists.
    pub fn solve_mul(&self, b: &Elt, t: &Elt) -> Option<Elt> {
        match &self.basis {
            QuotBasis::Int(m) => {
                let a: IntMat = vec![vec![b.x.clone(), m.clone()]];
                let s = solve_int_linear(&a, &[t.x.clone()])?;
                Some(self.reduce(&Elt::from_int(s.particular[0].clone())))
            }
            QuotBasis::Quad(l) => {
                let bw = times_omega(&self.dom, b);
                let a: IntMat = vec![
                    vec![b.x.clone(), bw.x.clone(), l[0][0].clone(), l[1][0].clone()],
                    vec![b.y.clone(), bw.y.clone(), l[0][1].clone(), l[1][1].clone()],
                ];
                let s = solve_int_linear(&a, &[t.x.clone(), t.y.clone()])?;
                Some(self.reduce(&Elt::new(s.particular[0].clone(), s.particular[1].clone())))
            }
        }
    }

    pub fn inv(&self, b: &Elt) -> Option<Elt> {
        self.solve_mul(b, &Elt::one())
    }

    /// Idempotent e with (e) = (s^k) in the quotient, found where the chain
    /// of powers of s stabilises; also returns k and a witness x with
    /// s^(2k) x = s^k.
    pub fn idempotent_of(&self, s: &Elt) -> Result<(Elt, u64, Elt)> {
        let mut k: u64 = 1;
        loop {
            let sk = self.pow(s, k);
            let s2k = self.mul(&sk, &sk);
            if let Some(x) = self.solve_mul(&s2k, &sk) {
                let e = self.mul(&sk, &x);
                if !self.eq(&self.mul(&e, &e), &e) {
                    return Err(Error::InvariantViolation(
                        "stabilised power did not yield an idempotent".into(),
                    ));
                }
                return Ok((e, k, x));
            }
            k *= 2;
            if k > 1 << 20 {
                return Err(Error::IterationLimit("idempotent power stabilisation".into()));
            }
        }
    }
}
