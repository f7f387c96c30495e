use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::uni::UniPoly;
use crate::arith::BigRat;
use crate::error::{Error, Result};

/// The `c`-th cyclotomic polynomial, from `x^c - 1 = prod_{d | c} Phi_d`.
pub fn cyclotomic_polynomial(c: u64) -> UniPoly {
    assert!(c >= 1, "conductor must be positive");
    let mut acc = &UniPoly::monomial(BigRat::one(), c as usize) - &UniPoly::one();
    for d in (1..c).filter(|d| c.is_multiple_of(*d)) {
        acc = acc
            .divide_exact(&cyclotomic_polynomial(d))
            .expect("nonzero divisor")
            .expect("Phi_d divides x^c - 1");
    }
    acc
}

/// The field `Q(zeta_c)` presented as `Q[x] / Phi_c(x)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    modulus: UniPoly,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Arc<Self> {
        Arc::new(CyclotomicField {
            conductor,
            modulus: cyclotomic_polynomial(conductor),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    /// Degree of the extension, `phi(c)`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    fn reduce(&self, p: &UniPoly) -> UniPoly {
        p.div_rem(&self.modulus).expect("nonzero modulus").1
    }

    pub fn element(self: &Arc<Self>, residue: &UniPoly) -> CyclotomicElt {
        CyclotomicElt {
            field: self.clone(),
            residue: self.reduce(residue),
        }
    }

    pub fn zero(self: &Arc<Self>) -> CyclotomicElt {
        self.rational(BigRat::zero())
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicElt {
        self.rational(BigRat::one())
    }

    pub fn rational(self: &Arc<Self>, c: BigRat) -> CyclotomicElt {
        CyclotomicElt {
            field: self.clone(),
            residue: UniPoly::constant(c),
        }
    }

    /// The primitive root `zeta_c`.
    pub fn generator(self: &Arc<Self>) -> CyclotomicElt {
        self.element(&UniPoly::x())
    }

    /// `zeta_c^k` for any integer `k`.
    pub fn root_of_unity(self: &Arc<Self>, k: i64) -> CyclotomicElt {
        let c = self.conductor as i64;
        let k = k.rem_euclid(c) as usize;
        self.element(&UniPoly::monomial(BigRat::one(), k))
    }
}

/// An element of `Q(zeta_c)`, stored as its residue modulo `Phi_c`.
#[derive(Clone, Debug)]
pub struct CyclotomicElt {
    field: Arc<CyclotomicField>,
    residue: UniPoly,
}

impl PartialEq for CyclotomicElt {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.residue == other.residue
    }
}

impl Eq for CyclotomicElt {}

impl CyclotomicElt {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn residue(&self) -> &UniPoly {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRat> {
        match self.residue.degree() {
            None => Some(BigRat::zero()),
            Some(0) => Some(self.residue.coeff(0)),
            Some(_) => None,
        }
    }

    pub(crate) fn check_same_field(&self, other: &CyclotomicElt) -> Result<()> {
        if self.conductor() == other.conductor() {
            Ok(())
        } else {
            Err(Error::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            })
        }
    }

    pub fn checked_add(&self, other: &CyclotomicElt) -> Result<CyclotomicElt> {
        self.check_same_field(other)?;
        Ok(CyclotomicElt {
            field: self.field.clone(),
            residue: &self.residue + &other.residue,
        })
    }

    pub fn checked_sub(&self, other: &CyclotomicElt) -> Result<CyclotomicElt> {
        self.check_same_field(other)?;
        Ok(CyclotomicElt {
            field: self.field.clone(),
            residue: &self.residue - &other.residue,
        })
    }

    pub fn checked_mul(&self, other: &CyclotomicElt) -> Result<CyclotomicElt> {
        self.check_same_field(other)?;
        Ok(self.field.element(&(&self.residue * &other.residue)))
    }

    pub fn pow(&self, mut k: u64) -> CyclotomicElt {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under `Q(zeta_c) -> Q(zeta_N)`, `zeta_c -> zeta_N^(N/c)`, for
    /// `c | N`.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<CyclotomicElt> {
        let c = self.conductor();
        let big = target.conductor();
        if !big.is_multiple_of(c) {
            return Err(Error::ConductorMismatch { left: c, right: big });
        }
        let step = (big / c) as usize;
        let mut acc = target.zero();
        for (i, a) in self.residue.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let t = target.element(&UniPoly::monomial(a.clone(), i * step));
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl Add for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn add(self, rhs: &CyclotomicElt) -> CyclotomicElt {
        self.checked_add(rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Sub for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn sub(self, rhs: &CyclotomicElt) -> CyclotomicElt {
        self.checked_sub(rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Mul for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn mul(self, rhs: &CyclotomicElt) -> CyclotomicElt {
        self.checked_mul(rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Neg for &CyclotomicElt {
    type Output = CyclotomicElt;
    fn neg(self) -> CyclotomicElt {
        CyclotomicElt {
            field: self.field.clone(),
            residue: -&self.residue,
        }
    }
}

impl fmt::Display for CyclotomicElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = format!("z{}", self.conductor());
        let s = self.residue.to_string().replace('x', &z);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), UniPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), UniPoly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), UniPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), UniPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn geometric_sum_vanishes_for_prime_conductors() {
        for c in [2u64, 3, 5, 7, 11, 13] {
            let k = CyclotomicField::new(c);
            let z = k.generator();
            let mut s = k.zero();
            for i in 0..c {
                s = &s + &z.pow(i);
            }
            assert!(s.is_zero(), "conductor {c}");
        }
    }

    #[test]
    fn generator_has_exact_order() {
        for c in 1..=12u64 {
            let k = CyclotomicField::new(c);
            let z = k.generator();
            assert_eq!(z.pow(c), k.one());
            for j in 1..c {
                assert_ne!(z.pow(j), k.one(), "conductor {c}, power {j}");
            }
        }
    }

    #[test]
    fn embedding_is_multiplicative() {
        let k3 = CyclotomicField::new(3);
        let k12 = CyclotomicField::new(12);
        let rho = k3.generator();
        let e = rho.embed(&k12).unwrap();
        assert_eq!(e, k12.root_of_unity(4));
        assert_eq!((&rho * &rho).embed(&k12).unwrap(), &e * &e);
        assert!(rho.embed(&CyclotomicField::new(4)).is_err());
    }

    #[test]
    fn mismatched_conductors() {
        let a = CyclotomicField::new(3).one();
        let b = CyclotomicField::new(4).one();
        assert_eq!(
            a.checked_add(&b),
            Err(Error::ConductorMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn rational_view() {
        let k = CyclotomicField::new(3);
        assert_eq!(k.rational(int(3)).as_rational(), Some(int(3)));
        assert_eq!(k.generator().as_rational(), None);
        // 1 + rho + rho^2 = 0 makes rho^2 = -1 - rho
        assert_eq!(k.generator().pow(2).residue(), &UniPoly::from_ints(&[-1, -1]));
    }
}
