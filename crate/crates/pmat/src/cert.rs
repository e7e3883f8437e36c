//! Comaximality certificates: the divisibility contract, the oracle for each
//! supported domain, and the kernel context exposing them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::domain::{Domain, Elt, Fe};
use crate::error::{Error, Result};
use crate::quadratic::certificate_quadratic;

/// The certificate contract: sum s_i = 1, s_i = 0 wherever a_i = 0, and
/// s_i * a_j divisible by a_i for every pair with a_i nonzero. Validity only
/// depends on the generator list up to a common nonzero scale.
pub fn validate_certificate(dom: &Domain, gens: &[Elt], cert: &[Elt]) -> bool {
    if gens.len() != cert.len() {
        return false;
    }
    let mut sum = Elt::zero();
    for s in cert {
        sum = dom.add(&sum, s);
    }
    if sum != Elt::one() {
        return false;
    }
    for (i, a) in gens.iter().enumerate() {
        if a.is_zero() {
            if !cert[i].is_zero() {
                return false;
            }
            continue;
        }
        for b in gens {
            if dom.divides(a, &dom.mul(&cert[i], b)).is_none() {
                return false;
            }
        }
    }
    true
}

fn certificate_int(gens: &[Elt]) -> Result<Vec<Elt>> {
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
        return Err(Error::ZeroIdeal("certificate for the zero ideal".into()));
    }
    if g.is_negative() {
        g = -g;
        for c in coef.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    Ok(gens
        .iter()
        .zip(coef)
        .map(|(a, c)| Elt::from_int(c * &a.x / &g))
        .collect())
}

/// Certificate oracle. Errors on an all-zero generator list; re-validates its
/// own answer before returning it.
pub fn comax_certificate(dom: &Domain, gens: &[Elt]) -> Result<Vec<Elt>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::ZeroIdeal("certificate for the zero ideal".into()));
    }
    let cert = match dom {
        Domain::Int => certificate_int(gens)?,
        Domain::Quadratic(_) => certificate_quadratic(dom, gens)?,
    };
    if !validate_certificate(dom, gens, &cert) {
        return Err(Error::InvariantViolation("oracle produced an invalid certificate".into()));
    }
    Ok(cert)
}

/// Entry point bundling the kernel operations for one base domain.
#[derive(Debug, Clone, Copy)]
pub struct PruferContext {
    pub domain: Domain,
}

impl PruferContext {
    pub fn new(domain: Domain) -> PruferContext {
        PruferContext { domain }
    }

    pub fn field_normalize(&self, fe: &Fe) -> Fe {
        self.domain.field_normalize(fe)
    }

    pub fn divides(&self, a: &Elt, b: &Elt) -> Option<Elt> {
        self.domain.divides(a, b)
    }

    pub fn comax_certificate(&self, gens: &[Elt]) -> Result<Vec<Elt>> {
        comax_certificate(&self.domain, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::XorShift;

    #[test]
    fn int_golden() {
        let cert = comax_certificate(&Domain::Int, &[Elt::from_i64(2), Elt::from_i64(3)]).unwrap();
        assert_eq!(cert, vec![Elt::from_i64(-2), Elt::from_i64(3)]);
    }

    #[test]
    fn int_non_coprime() {
        // <4, 6> = <2>: certificate exists for any nonzero ideal
        let gens = [Elt::from_i64(4), Elt::from_i64(6)];
        let cert = comax_certificate(&Domain::Int, &gens).unwrap();
        assert!(validate_certificate(&Domain::Int, &gens, &cert));
    }

    #[test]
    fn zero_ideal_rejected() {
        assert!(comax_certificate(&Domain::Int, &[Elt::zero(), Elt::zero()]).is_err());
        assert!(comax_certificate(&Domain::Int, &[]).is_err());
        let d = Domain::quadratic(-5).unwrap();
        assert!(comax_certificate(&d, &[Elt::zero()]).is_err());
    }

    #[test]
    fn randomized_certificates_all_domains() {
        let domains = [
            Domain::Int,
            Domain::quadratic(-5).unwrap(),
            Domain::quadratic(5).unwrap(),
            Domain::quadratic(-1).unwrap(),
            Domain::quadratic(13).unwrap(),
        ];
        let mut rng = XorShift::new(2024);
        for dom in &domains {
            let mut done = 0;
            while done < 200 {
                let n = 1 + (rng.next() % 4) as usize;
                let gens: Vec<Elt> = (0..n)
                    .map(|_| {
                        let y = if dom.is_int() { 0 } else { rng.next_i64_in(-12, 12) };
                        Elt::from_pair(rng.next_i64_in(-12, 12), y)
                    })
                    .collect();
                if gens.iter().all(|g| g.is_zero()) {
                    continue;
                }
                let cert = comax_certificate(dom, &gens).unwrap();
                assert!(validate_certificate(dom, &gens, &cert));
                // scale invariance: the same certificate stays valid after a
                // common rescale of the generators
                let k = Elt::from_pair(rng.next_i64_in(1, 5), 0);
                let scaled: Vec<Elt> = gens.iter().map(|g| dom.mul(g, &k)).collect();
                assert!(validate_certificate(dom, &scaled, &cert));
                done += 1;
            }
        }
    }
}
