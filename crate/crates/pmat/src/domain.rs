//! Base rings: Z and the maximal order O_d of Q(sqrt(d)), with their fraction
//! fields. Elements are kept in exact canonical form throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Integral basis generator: w = sqrt(d) when d != 1 (mod 4),
/// w = (1 + sqrt(d))/2 when d == 1 (mod 4). In both cases
/// w^2 = wsq_const + wsq_omega * w with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticOrder {
    pub d: i64,
}

impl QuadraticOrder {
    pub fn one_mod_four(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    pub fn wsq(&self) -> (i64, i64) {
        if self.one_mod_four() {
            ((self.d - 1) / 4, 1)
        } else {
            (self.d, 0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Int,
    Quadratic(QuadraticOrder),
}

pub const MAX_ABS_D: i64 = 1_000_000;

fn squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

impl Domain {
    pub fn quadratic(d: i64) -> Result<Domain> {
        if d == 0 || d == 1 {
            return Err(Error::BadDomain(format!("d = {} gives no quadratic field", d)));
        }
        if d.abs() > MAX_ABS_D {
            return Err(Error::BadDomain(format!(
                "|d| = {} exceeds the configured bound {}",
                d.abs(),
                MAX_ABS_D
            )));
        }
        if !squarefree(d) {
            return Err(Error::BadDomain(format!("d = {} is not squarefree", d)));
        }
        Ok(Domain::Quadratic(QuadraticOrder { d }))
    }

    /// Skips the |d| desk guard (d must still be squarefree).
    pub fn quadratic_unchecked(d: i64) -> Result<Domain> {
        if d == 0 || d == 1 || !squarefree(d) {
            return Err(Error::BadDomain(format!("d = {} is not a valid discriminant base", d)));
        }
        Ok(Domain::Quadratic(QuadraticOrder { d }))
    }

    pub fn is_int(&self) -> bool {
        matches!(self, Domain::Int)
    }
}

/// Ring element: x + y*w (y = 0 identically over Z).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elt {
    pub x: BigInt,
    pub y: BigInt,
}

impl Elt {
    pub fn new(x: BigInt, y: BigInt) -> Elt {
        Elt { x, y }
    }

    pub fn from_int(x: BigInt) -> Elt {
        Elt { x, y: BigInt::zero() }
    }

    pub fn from_i64(x: i64) -> Elt {
        Elt::from_int(BigInt::from(x))
    }

    pub fn from_pair(x: i64, y: i64) -> Elt {
        Elt { x: BigInt::from(x), y: BigInt::from(y) }
    }

    pub fn zero() -> Elt {
        Elt { x: BigInt::zero(), y: BigInt::zero() }
    }

    pub fn one() -> Elt {
        Elt { x: BigInt::one(), y: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Domain {
    fn check(&self, a: &Elt) {
        if self.is_int() {
            debug_assert!(a.y.is_zero(), "integer domain element with nonzero w part");
        }
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        Elt { x: &a.x + &b.x, y: &a.y + &b.y }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        Elt { x: &a.x - &b.x, y: &a.y - &b.y }
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        Elt { x: -&a.x, y: -&a.y }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        self.check(a);
        self.check(b);
        match self {
            Domain::Int => Elt { x: &a.x * &b.x, y: BigInt::zero() },
            Domain::Quadratic(q) => {
                let (c0, c1) = q.wsq();
                let yy = &a.y * &b.y;
                Elt {
                    x: &a.x * &b.x + &yy * c0,
                    y: &a.x * &b.y + &a.y * &b.x + &yy * c1,
                }
            }
        }
    }

    pub fn scale(&self, a: &Elt, k: &BigInt) -> Elt {
        Elt { x: &a.x * k, y: &a.y * k }
    }

    pub fn conj(&self, a: &Elt) -> Elt {
        match self {
            Domain::Int => a.clone(),
            Domain::Quadratic(q) => {
                if q.one_mod_four() {
                    // conj(w) = 1 - w
                    Elt { x: &a.x + &a.y, y: -&a.y }
                } else {
                    Elt { x: a.x.clone(), y: -&a.y }
                }
            }
        }
    }

    /// Field norm as a rational integer.
    pub fn norm(&self, a: &Elt) -> BigInt {
        let p = self.mul(a, &self.conj(a));
        debug_assert!(p.y.is_zero(), "norm must be rational");
        p.x
    }

    /// Exact quotient b / a in the ring, when it exists.
    pub fn divides(&self, a: &Elt, b: &Elt) -> Option<Elt> {
        if a.is_zero() {
            return if b.is_zero() { Some(Elt::zero()) } else { None };
        }
        match self {
            Domain::Int => {
                let (q, r) = b.x.div_rem(&a.x);
                if r.is_zero() {
                    Some(Elt::from_int(q))
                } else {
                    None
                }
            }
            Domain::Quadratic(_) => {
                let n = self.norm(a);
                let t = self.mul(b, &self.conj(a));
                let (qx, rx) = t.x.div_rem(&n);
                let (qy, ry) = t.y.div_rem(&n);
                if rx.is_zero() && ry.is_zero() {
                    Some(Elt { x: qx, y: qy })
                } else {
                    None
                }
            }
        }
    }

    pub fn pow(&self, a: &Elt, mut e: u64) -> Elt {
        let mut base = a.clone();
        let mut acc = Elt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn show(&self, a: &Elt) -> String {
        match self {
            Domain::Int => format!("{}", a.x),
            Domain::Quadratic(_) => {
                if a.y.is_zero() {
                    format!("{}", a.x)
                } else if a.x.is_zero() {
                    format!("{}*w", a.y)
                } else {
                    format!("{}{}{}*w", a.x, if a.y.is_negative() { "" } else { "+" }, a.y)
                }
            }
        }
    }
}

/// Fraction-field element num/den with den > 0 and content 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fe {
    pub num: Elt,
    pub den: BigInt,
}

impl Fe {
    pub fn zero() -> Fe {
        Fe { num: Elt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Fe {
        Fe { num: Elt::one(), den: BigInt::one() }
    }

    pub fn from_elt(a: Elt) -> Fe {
        Fe { num: a, den: BigInt::one() }
    }

    pub fn from_i64(x: i64) -> Fe {
        Fe::from_elt(Elt::from_i64(x))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num == Elt::one()
    }
}

impl Domain {
    /// Canonical form: positive denominator, gcd(x, y, den) = 1.
    pub fn fe_new(&self, num: Elt, den: BigInt) -> Result<Fe> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.check(&num);
        if num.is_zero() {
            return Ok(Fe::zero());
        }
        let mut g = num.x.gcd(&num.y).gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        Ok(Fe { num: Elt { x: &num.x / &g, y: &num.y / &g }, den: &den / &g })
    }

    pub fn field_normalize(&self, fe: &Fe) -> Fe {
        self.fe_new(fe.num.clone(), fe.den.clone()).expect("denominator must be nonzero")
    }

    pub fn fe_add(&self, a: &Fe, b: &Fe) -> Fe {
        let num = self.add(&self.scale(&a.num, &b.den), &self.scale(&b.num, &a.den));
        self.fe_new(num, &a.den * &b.den).unwrap()
    }

    pub fn fe_sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.fe_add(a, &self.fe_neg(b))
    }

    pub fn fe_neg(&self, a: &Fe) -> Fe {
        Fe { num: self.neg(&a.num), den: a.den.clone() }
    }

    pub fn fe_mul(&self, a: &Fe, b: &Fe) -> Fe {
        self.fe_new(self.mul(&a.num, &b.num), &a.den * &b.den).unwrap()
    }

    pub fn fe_inv(&self, a: &Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm(&a.num);
        let num = self.scale(&self.conj(&a.num), &a.den);
        self.fe_new(num, n)
    }

    pub fn fe_div(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        Ok(self.fe_mul(a, &self.fe_inv(b)?))
    }

    pub fn fe_scale_int(&self, a: &Fe, k: &BigInt) -> Fe {
        self.fe_new(self.scale(&a.num, k), a.den.clone()).unwrap()
    }

    pub fn fe_from_ratio(&self, x: BigInt, den: BigInt) -> Result<Fe> {
        self.fe_new(Elt::from_int(x), den)
    }

    pub fn fe_show(&self, a: &Fe) -> String {
        if a.den.is_one() {
            self.show(&a.num)
        } else {
            format!("({})/{}", self.show(&a.num), a.den)
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Int => write!(f, "Z"),
            Domain::Quadratic(q) => write!(f, "O_{}", q.d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::XorShift;

    fn zi5() -> Domain {
        Domain::quadratic(-5).unwrap()
    }

    #[test]
    fn domain_guards() {
        assert!(Domain::quadratic(12).is_err()); // 12 = 4*3
        assert!(Domain::quadratic(0).is_err());
        assert!(Domain::quadratic(1).is_err());
        assert!(Domain::quadratic(2_000_000).is_err());
        assert!(Domain::quadratic(-5).is_ok());
        assert!(Domain::quadratic(5).is_ok());
        assert!(Domain::quadratic(-3).is_ok());
    }

    #[test]
    fn omega_squared() {
        // d = -5: w^2 = -5
        let d = zi5();
        let w = Elt::from_pair(0, 1);
        assert_eq!(d.mul(&w, &w), Elt::from_pair(-5, 0));
        // d = 5: w = (1+sqrt5)/2, w^2 = w + 1
        let d5 = Domain::quadratic(5).unwrap();
        assert_eq!(d5.mul(&w, &w), Elt::from_pair(1, 1));
    }

    #[test]
    fn norm_and_conj() {
        let d = zi5();
        let a = Elt::from_pair(1, 1); // 1 + w
        assert_eq!(d.norm(&a), BigInt::from(6)); // 1 + 5
        assert_eq!(d.mul(&a, &d.conj(&a)), Elt::from_pair(6, 0));
        let d5 = Domain::quadratic(5).unwrap();
        let b = Elt::from_pair(0, 1); // w = (1+sqrt5)/2
        assert_eq!(d5.norm(&b), BigInt::from(-1)); // w * (1 - w) = -w^2 + w = -1
    }

    #[test]
    fn divides_quadratic() {
        let d = zi5();
        let two = Elt::from_i64(2);
        let opw = Elt::from_pair(1, 1);
        // (1+w)(1-w) = 6 so (1+w) | 6
        assert_eq!(
            d.divides(&opw, &Elt::from_i64(6)),
            Some(Elt::from_pair(1, -1))
        );
        assert!(d.divides(&two, &opw).is_none());
        assert!(d.divides(&two, &Elt::from_pair(-2, -2)).is_some());
        assert!(d.divides(&Elt::zero(), &two).is_none());
        assert_eq!(d.divides(&Elt::zero(), &Elt::zero()), Some(Elt::zero()));
    }

    #[test]
    fn field_arithmetic_random() {
        let domains = [Domain::Int, zi5(), Domain::quadratic(5).unwrap(), Domain::quadratic(2).unwrap()];
        let mut rng = XorShift::new(11);
        for d in &domains {
            for _ in 0..200 {
                let r = |rng: &mut XorShift| {
                    let y = if d.is_int() { 0 } else { rng.next_i64_in(-8, 8) };
                    d.fe_new(
                        Elt::from_pair(rng.next_i64_in(-8, 8), y),
                        BigInt::from(rng.next_i64_in(1, 9)),
                    )
                    .unwrap()
                };
                let (a, b) = (r(&mut rng), r(&mut rng));
                // canonical form is closed under arithmetic
                let s = d.fe_add(&a, &b);
                assert_eq!(s, d.field_normalize(&s));
                let p = d.fe_mul(&a, &b);
                assert_eq!(p, d.field_normalize(&p));
                assert_eq!(d.fe_sub(&s, &b), a);
                if !b.is_zero() {
                    assert_eq!(d.fe_mul(&d.fe_div(&a, &b).unwrap(), &b), a);
                    assert!(d.fe_mul(&b, &d.fe_inv(&b).unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn normalization_is_canonical() {
        let d = zi5();
        let a = d.fe_new(Elt::from_pair(2, 4), BigInt::from(-6)).unwrap();
        assert_eq!(a, Fe { num: Elt::from_pair(-1, -2), den: BigInt::from(3) });
        assert_eq!(d.fe_new(Elt::zero(), BigInt::from(-7)).unwrap(), Fe::zero());
    }
}
