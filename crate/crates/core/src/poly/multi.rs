use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicElt;
use crate::arith::{is_integer, BigRat};
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// lexicographically with `x1 > x2 > ... > xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial in `arity` variables over the rationals. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponents, BigRat>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigRat::one())
    }

    pub fn constant(arity: usize, c: BigRat) -> Self {
        Self::monomial(arity, vec![0; arity], c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index {i} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(arity, e, BigRat::one())
    }

    pub fn monomial(arity: usize, exps: Vec<u32>, c: BigRat) -> Self {
        assert_eq!(exps.len(), arity, "exponent vector length");
        let mut p = Self::zero(arity);
        p.add_term(Exponents(exps), c);
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRat)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector length");
            p.add_term(Exponents(e), c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRat {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponents::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponents::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<()> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                out.add_term(Exponents(e), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial with exponent vector `shift`.
    pub fn mul_monomial(&self, shift: &[u32]) -> MultiPoly {
        assert_eq!(shift.len(), self.arity);
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e = e.0.iter().zip(shift).map(|(x, y)| x + y).collect();
                    (Exponents(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.arity);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `x_{i+1} = value`, keeping the arity.
    pub fn set_var(&self, i: usize, value: &BigRat) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.0[i];
            let mut e = e.0.clone();
            e[i] = 0;
            let factor = if k == 0 {
                BigRat::one()
            } else {
                num_traits::pow(value.clone(), k as usize)
            };
            out.add_term(Exponents(e), c * factor);
        }
        out
    }

    /// Compose: replace `x_{i+1}` by `images[i]`. All images share one arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, MultiPoly::arity);
        for g in images {
            if g.arity != target {
                return Err(Error::ArityMismatch {
                    left: target,
                    right: g.arity,
                });
            }
        }
        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, k))
                    .or_insert_with(|| images[i].pow(k))
                    .clone();
                term = &term * &pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn eval_rational(&self, point: &[BigRat]) -> Result<BigRat> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: point.len(),
            });
        }
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation at a point whose coordinates live in one cyclotomic
    /// field.
    pub fn eval(&self, point: &[CyclotomicElt]) -> Result<CyclotomicElt> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: point.len(),
            });
        }
        let first = point
            .first()
            .ok_or_else(|| Error::Precondition("evaluation point is empty".into()))?;
        for z in point {
            first.check_same_field(z)?;
        }
        let field = first.field().clone();
        let mut powers: HashMap<(usize, u32), CyclotomicElt> = HashMap::new();
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut t = field.rational(c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers.entry((i, k)).or_insert_with(|| point[i].pow(k as u64));
                t = &t * &*pw;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

/// All exponent vectors of total degree `degree` in `arity` variables, in
/// descending graded-lex order.
pub fn monomials_of_degree(arity: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(arity: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == arity {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(arity, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(arity, degree, &mut Vec::with_capacity(arity), &mut out);
    out
}

/// Checked arithmetic entry point: arity mismatch is an error rather than a
/// panic.
pub fn mp_arith(a: &MultiPoly, b: &MultiPoly, op: MpOp) -> Result<MultiPoly> {
    match op {
        MpOp::Add => a.checked_add(b),
        MpOp::Sub => a.checked_sub(b),
        MpOp::Mul => a.checked_mul(b),
    }
}

pub fn mp_eval(f: &MultiPoly, point: &[CyclotomicElt]) -> Result<CyclotomicElt> {
    f.eval(point)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("MultiPoly arity mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("MultiPoly arity mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("MultiPoly arity mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRat::one())
    }
}

impl fmt::Display for MultiPoly {
    /// `c * x1^e1*...*xn^en` terms in descending graded-lex order joined by
    /// ` + `; rationals print as `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, k)| format!("x{}^{}", i + 1, k))
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let expect = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        assert_eq!(mp_arith(&a, &b, MpOp::Mul).unwrap(), expect);
    }

    #[test]
    fn additive_identity() {
        let p = &x(3, 0).pow(3) + &x(3, 2).scale(&rat(1, 2));
        assert_eq!(&p + &MultiPoly::zero(3), p);
    }

    #[test]
    fn square_of_linear_form() {
        let s = &(&x(3, 0) + &x(3, 1)) + &x(3, 2);
        let sq = s.pow(2);
        assert_eq!(sq.num_terms(), 6);
        assert_eq!(sq.coeff(&[1, 1, 0]), int(2));
        assert_eq!(sq.coeff(&[0, 1, 1]), int(2));
        assert_eq!(sq.coeff(&[2, 0, 0]), int(1));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert_eq!(
            mp_arith(&x(2, 0), &x(3, 0), MpOp::Add),
            Err(Error::ArityMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &x(2, 0) - &x(2, 0);
        assert!(p.is_zero());
        assert_eq!(p.total_degree(), None);
    }

    #[test]
    fn rendering() {
        let p = &(&x(2, 0).pow(2) - &x(2, 1).pow(2)) + &MultiPoly::constant(2, rat(-3, 4));
        assert_eq!(p.to_string(), "1 * x1^2 + -1 * x2^2 + -3/4");
    }

    #[test]
    fn substitution_and_rational_eval() {
        // (x1 + x2)^2 with x1 = y^2, x2 = 1
        let p = (&x(2, 0) + &x(2, 1)).pow(2);
        let y = x(1, 0);
        let q = p.substitute(&[y.pow(2), MultiPoly::one(1)]).unwrap();
        assert_eq!(q, (&y.pow(2) + &MultiPoly::one(1)).pow(2));
        assert_eq!(q.eval_rational(&[int(2)]).unwrap(), int(25));
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
        assert_eq!(monomials_of_degree(4, 7).len(), 120);
        assert_eq!(monomials_of_degree(1, 5), vec![vec![5]]);
        let mut sorted = monomials_of_degree(3, 4);
        sorted.sort_by_key(|a| std::cmp::Reverse(Exponents(a.clone())));
        assert_eq!(sorted, monomials_of_degree(3, 4));
    }

    #[test]
    fn homogeneity() {
        assert!((&x(2, 0) + &x(2, 1)).is_homogeneous());
        assert!(!(&x(2, 0) + &MultiPoly::one(2)).is_homogeneous());
    }
}
