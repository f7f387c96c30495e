use num_traits::Zero;

use super::elementary;
use crate::arith::{int, rat, rat_pow, BigRat};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// A polynomial in the elementary symmetric polynomials: variable `i` of the
/// underlying `MultiPoly` stands for `e_{i+1}`, and the arity is the number of
/// ambient variables `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EBasisPoly(MultiPoly);

impl EBasisPoly {
    pub fn new(p: MultiPoly) -> Self {
        EBasisPoly(p)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn into_poly(self) -> MultiPoly {
        self.0
    }

    pub fn arity(&self) -> usize {
        self.0.arity()
    }

    /// Weighted degree with `deg e_i = i`.
    pub fn weighted_degree(exps: &[u32]) -> u32 {
        exps.iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k).sum()
    }

    /// Substitute `e_i -> e_i(x_1..x_n)`.
    pub fn expand(&self) -> MultiPoly {
        let n = self.arity();
        let images: Vec<MultiPoly> = (1..=n).map(|i| elementary(i, n)).collect();
        self.0.substitute(&images).expect("images share arity n")
    }

    /// Reduce modulo `(e_1)`.
    pub fn mod_e1(&self) -> EBasisPoly {
        EBasisPoly(self.0.set_var(0, &BigRat::zero()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sequence {
    Power,
    Complete,
}

/// Memo of `p_1, p_2, ...` (or `h_0, h_1, ...`) in the e-basis, extended on
/// demand by Newton's recursion. Owned by one caller; not shared.
#[derive(Clone, Debug)]
pub struct NewtonTable {
    n: usize,
    kind: Sequence,
    seq: Vec<MultiPoly>,
}

impl NewtonTable {
    /// `p_k = sum_{i<k, i<=n} (-1)^{i-1} e_i p_{k-i} + [k<=n] (-1)^{k-1} k e_k`.
    pub fn power(n: usize) -> Self {
        NewtonTable {
            n,
            kind: Sequence::Power,
            // index 0 is a placeholder; the recursion never reads it
            seq: vec![MultiPoly::zero(n)],
        }
    }

    /// `h_k = sum_{i<=min(k,n)} (-1)^{i-1} e_i h_{k-i}`, `h_0 = 1`.
    pub fn complete(n: usize) -> Self {
        NewtonTable {
            n,
            kind: Sequence::Complete,
            seq: vec![MultiPoly::one(n)],
        }
    }

    fn e_shift(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; self.n];
        e[i - 1] = 1;
        e
    }

    pub fn get(&mut self, m: usize) -> EBasisPoly {
        while self.seq.len() <= m {
            let k = self.seq.len();
            let upper = match self.kind {
                Sequence::Power => (k - 1).min(self.n),
                Sequence::Complete => k.min(self.n),
            };
            let mut acc = MultiPoly::zero(self.n);
            for i in 1..=upper {
                let t = self.seq[k - i].mul_monomial(&self.e_shift(i));
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            if self.kind == Sequence::Power && k <= self.n {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let t = MultiPoly::monomial(self.n, self.e_shift(k), int(sign * k as i64));
                acc = &acc + &t;
            }
            self.seq.push(acc);
        }
        EBasisPoly(self.seq[m].clone())
    }
}

/// `p_m(n)` written in `e_1..e_n`.
pub fn power_in_e_basis(m: usize, n: usize) -> EBasisPoly {
    assert!(m >= 1, "power sums start at p_1");
    NewtonTable::power(n).get(m)
}

/// `h_m(n)` written in `e_1..e_n`.
pub fn complete_in_e_basis(m: usize, n: usize) -> EBasisPoly {
    NewtonTable::complete(n).get(m)
}

/// Shape of `p_t(3)` modulo `e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModE1Class {
    pub is_monomial: bool,
    /// Coefficient and exponents of `e_2`, `e_3`; set only for monomials.
    pub unit: Option<BigRat>,
    pub e2_exp: Option<u32>,
    pub e3_exp: Option<u32>,
}

pub fn classify_mod_e1(t: usize) -> ModE1Class {
    let r = power_in_e_basis(t, 3).mod_e1();
    let mut terms = r.poly().terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) => ModE1Class {
            is_monomial: true,
            unit: Some(c.clone()),
            e2_exp: Some(e.0[1]),
            e3_exp: Some(e.0[2]),
        },
        _ => ModE1Class {
            is_monomial: false,
            unit: None,
            e2_exp: None,
            e3_exp: None,
        },
    }
}

/// `p_m(3) = coefficient * e_2^e2_exp * e_3^e3_exp` modulo `(p_1, p_6)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedShape {
    pub coefficient: BigRat,
    pub e2_exp: u32,
    pub e3_exp: u32,
}

/// Reduce `p_m(3)` modulo `(p_1, p_6)`: drop `e_1`, then rewrite
/// `e_3^(2j+r)` as `(2/3)^j e_2^(3j) e_3^r`. The result is a single term,
/// `e_2^h` for `m = 2h` and `e_2^(h-1) e_3` for `m = 2h+1`.
pub fn reduce_mod_p1_p6(m: usize) -> ReducedShape {
    reduce_with(&mut NewtonTable::power(3), m)
}

/// [`reduce_mod_p1_p6`] for `m = 1..=m_max`, sharing one Newton table.
pub fn reduce_mod_p1_p6_upto(m_max: usize) -> Vec<ReducedShape> {
    let mut table = NewtonTable::power(3);
    (1..=m_max).map(|m| reduce_with(&mut table, m)).collect()
}

pub(crate) fn reduce_with(table: &mut NewtonTable, m: usize) -> ReducedShape {
    assert!(m >= 1);
    let r = table.get(m).mod_e1();
    let two_thirds = rat(2, 3);
    let mut coefficient = BigRat::zero();
    for (e, c) in r.poly().terms() {
        debug_assert_eq!(e.0[0], 0);
        let j = e.0[2] / 2;
        coefficient += c * rat_pow(&two_thirds, j as i64);
    }
    if m == 1 {
        return ReducedShape {
            coefficient,
            e2_exp: 0,
            e3_exp: 0,
        };
    }
    let e3_exp = (m % 2) as u32;
    ReducedShape {
        coefficient,
        e2_exp: (m as u32 - 3 * e3_exp) / 2,
        e3_exp,
    }
}

/// The rational `c_d` with `p_d(3) = c_d p_1^d` modulo `(p_2, p_3)`,
/// obtained by substituting `e_1 = t`, `e_2 = t^2/2`, `e_3 = t^3/6`.
pub fn reduce_mod_p2_p3(d: usize) -> Result<BigRat> {
    let t = MultiPoly::var(1, 0);
    let images = [
        t.clone(),
        t.pow(2).scale(&rat(1, 2)),
        t.pow(3).scale(&rat(1, 6)),
    ];
    let r = power_in_e_basis(d, 3).poly().substitute(&images)?;
    let mut terms = r.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Ok(BigRat::zero()),
        (Some((e, c)), None) if e.0[0] as usize == d => Ok(c.clone()),
        _ => Err(Error::Precondition(format!(
            "p_{d} did not reduce to a multiple of p_1^{d}"
        ))),
    }
}
