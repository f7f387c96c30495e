use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_integer, is_prime_u64, BigInt, BigRat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upward. The leading stored coefficient is never zero, so
/// the zero polynomial is the empty vector and has no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigRat::one(), 1)
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRat, k: usize) -> Self {
        let mut v = vec![BigRat::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    pub fn scale(&self, c: &BigRat) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, g: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lc = g.leading().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![BigRat::zero(); r.len() - dg];
        for i in (0..q.len()).rev() {
            let c = &r[i + dg] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                r[i + j] -= &c * gj;
            }
            q[i] = c;
        }
        r.truncate(dg);
        Ok((UniPoly::from_coeffs(q), UniPoly::from_coeffs(r)))
    }

    /// `Some(q)` with `self = q * g` when `g` divides exactly, `None`
    /// otherwise.
    pub fn divide_exact(&self, g: &UniPoly) -> Result<Option<UniPoly>> {
        let (q, r) = self.div_rem(g)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd over the rationals.
    pub fn gcd(&self, g: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && g.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let mut a = primitive_part(&clear_denominators(self));
        let mut b = primitive_part(&clear_denominators(g));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(&r);
        }
        let p = UniPoly::from_coeffs(a.into_iter().map(BigRat::from_integer).collect());
        Ok(p.monic())
    }

    /// `f(x + c)` by repeated synthetic division, in integers when `f` and
    /// `c` are integral.
    pub fn shift(&self, c: &BigRat) -> UniPoly {
        let n = self.coeffs.len();
        if c.is_integer() && self.is_integral() {
            let c = c.to_integer();
            let mut a: Vec<BigInt> = self.coeffs.iter().map(|x| x.to_integer()).collect();
            for i in 0..n {
                for j in (i..n - 1).rev() {
                    let t = &a[j + 1] * &c;
                    a[j] += t;
                }
            }
            return UniPoly::from_coeffs(a.into_iter().map(BigRat::from_integer).collect());
        }
        let mut a = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        UniPoly::from_coeffs(a)
    }

    /// Eisenstein's criterion at the prime `p`: `p` divides every coefficient
    /// but the leading one, `p` does not divide the leading coefficient and
    /// `p^2` does not divide the constant term.
    pub fn eisenstein_at(&self, p: u64) -> Result<bool> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let c = self.integer_coeffs()?;
        if c.len() < 2 {
            return Err(Error::Precondition(
                "Eisenstein test needs degree >= 1".into(),
            ));
        }
        let p = BigInt::from(p);
        let divides = |x: &BigInt| (x % &p).is_zero();
        let lead_ok = !divides(c.last().expect("nonempty"));
        let rest_ok = c[..c.len() - 1].iter().all(divides);
        let const_ok = !divides(&(&c[0] / &p));
        Ok(lead_ok && rest_ok && const_ok)
    }
}

fn clear_denominators(f: &UniPoly) -> Vec<BigInt> {
    let l = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    f.coeffs
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect()
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let Some(lead) = v.last() else {
        return v;
    };
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lead.is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder of `a` by `b` over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let lr = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

pub fn up_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly> {
    f.gcd(g)
}

pub fn up_shift(f: &UniPoly, c: &BigRat) -> UniPoly {
    f.shift(c)
}

pub fn up_divide_exact(f: &UniPoly, g: &UniPoly) -> Result<Option<UniPoly>> {
    f.divide_exact(g)
}

pub fn eisenstein_at(f: &UniPoly, p: u64) -> Result<bool> {
    f.eisenstein_at(p)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    /// Same text format as `MultiPoly`, with the single variable `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * x^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    /// `1 + x^b + (-1)^b (x+1)^b`
    fn f_b(b: u32) -> UniPoly {
        let sign = if b.is_multiple_of(2) { int(1) } else { int(-1) };
        let xp1 = UniPoly::from_ints(&[1, 1]);
        &(&UniPoly::one() + &UniPoly::x().pow(b)) + &xp1.pow(b).scale(&sign)
    }

    #[test]
    fn gcd_examples() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(up_gcd(&a, &b).unwrap(), b);
        let f = UniPoly::from_ints(&[6, 4, 2]);
        assert_eq!(up_gcd(&f, &f).unwrap(), f.monic());
        assert!(up_gcd(&f_b(2), &f_b(6)).unwrap().is_one());
        assert_eq!(f_b(2), UniPoly::from_ints(&[2, 2, 2]));
        assert_eq!(
            up_gcd(&UniPoly::zero(), &UniPoly::zero()),
            Err(Error::ZeroGcd)
        );
        assert_eq!(up_gcd(&UniPoly::zero(), &f).unwrap(), f.monic());
    }

    #[test]
    fn shift_examples() {
        let sq = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(up_shift(&sq, &int(1)), UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(up_shift(&f_b(7), &int(0)), f_b(7));
        let s = up_shift(&f_b(6), &int(1));
        assert_eq!(s.degree(), Some(6));
        assert_eq!(s.coeff(0), int(66));
        assert_eq!(s.leading(), Some(&int(2)));
    }

    #[test]
    fn shift_matches_evaluation() {
        use crate::arith::rat;
        let f = UniPoly::from_coeffs(vec![rat(1, 3), int(-2), int(0), rat(5, 2), int(1)]);
        for c in [int(1), int(-3), rat(2, 3), rat(-7, 5)] {
            let g = up_shift(&f, &c);
            let h = up_shift(&f_b(9), &c);
            for x in [int(0), int(2), rat(-1, 4)] {
                assert_eq!(g.eval(&x), f.eval(&(&x + &c)), "c={c}");
                assert_eq!(h.eval(&x), f_b(9).eval(&(&x + &c)), "c={c}");
            }
        }
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein_at(&UniPoly::from_ints(&[3, 3, 1]), 3), Ok(true));
        assert_eq!(eisenstein_at(&UniPoly::from_ints(&[1, 0, 1]), 3), Ok(false));
        assert_eq!(eisenstein_at(&up_shift(&f_b(6), &int(1)), 3), Ok(true));
        let half = UniPoly::from_coeffs(vec![crate::arith::rat(1, 2), int(1)]);
        assert_eq!(eisenstein_at(&half, 3), Err(Error::NonIntegral));
        assert_eq!(eisenstein_at(&half.scale(&int(2)), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn exact_division_examples() {
        let one_minus = |k: usize| &UniPoly::one() - &UniPoly::monomial(int(1), k);
        assert_eq!(
            up_divide_exact(&one_minus(5), &one_minus(1)).unwrap(),
            Some(UniPoly::from_ints(&[1, 1, 1, 1, 1]))
        );
        assert_eq!(up_divide_exact(&one_minus(5), &one_minus(2)).unwrap(), None);
        let f = f_b(5);
        assert_eq!(up_divide_exact(&f, &UniPoly::one()).unwrap(), Some(f.clone()));
        assert_eq!(up_divide_exact(&f, &UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(UniPoly::one().degree(), Some(0));
        assert_eq!((&f_b(3) - &f_b(3)).degree(), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(UniPoly::from_ints(&[2, -8]).to_string(), "-8 * x^1 + 2");
    }
}
