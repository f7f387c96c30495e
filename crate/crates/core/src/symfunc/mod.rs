//! Symmetric polynomials and the coefficient machinery built on them.

mod coeffs;
mod ebasis;
mod qbinom;

pub use coeffs::{
    a_coefficient, c_coefficient, c_growth_check, f_polynomial, CGrowthReport, CRecurrence,
};
pub use ebasis::{
    classify_mod_e1, complete_in_e_basis, power_in_e_basis, reduce_mod_p1_p6, reduce_mod_p1_p6_upto,
    reduce_mod_p2_p3,
    EBasisPoly, ModE1Class, NewtonTable, ReducedShape,
};
pub use qbinom::{gaussian_binomial, partition_count};

use std::collections::BTreeSet;

use num_traits::One;

use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, MultiPoly};

/// A partition: positive parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// `p_k = x1^k + ... + xn^k`.
pub fn power_sum(k: u32, n: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = k;
        p = &p + &MultiPoly::monomial(n, e, BigRat::one());
    }
    p
}

/// `e_k`: sum of the squarefree monomials of degree `k`; zero for `k > n`.
pub fn elementary(k: usize, n: usize) -> MultiPoly {
    fn rec(n: usize, start: usize, left: usize, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(e.clone());
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            e[i] = 1;
            rec(n, i + 1, left - 1, e, out);
            e[i] = 0;
        }
    }
    let mut exps = Vec::new();
    if k <= n {
        rec(n, 0, k, &mut vec![0; n], &mut exps);
    }
    MultiPoly::from_terms(n, exps.into_iter().map(|e| (e, BigRat::one())))
}

/// `h_k`: sum of all monomials of degree `k`.
pub fn complete(k: u32, n: usize) -> MultiPoly {
    MultiPoly::from_terms(
        n,
        monomials_of_degree(n, k)
            .into_iter()
            .map(|e| (e, BigRat::one())),
    )
}

/// `m_lambda`: the orbit sum of `x^lambda` under permutations of the
/// variables.
pub fn monomial_sym(lambda: &Partition, n: usize) -> Result<MultiPoly> {
    if lambda.len() > n {
        return Err(Error::Precondition(format!(
            "partition with {} parts in {n} variables",
            lambda.len()
        )));
    }
    let mut base: Vec<u32> = lambda.parts().to_vec();
    base.resize(n, 0);
    let mut orbit = BTreeSet::new();
    permutations_into(&mut base, 0, &mut orbit);
    Ok(MultiPoly::from_terms(
        n,
        orbit.into_iter().map(|e| (e, BigRat::one())),
    ))
}

fn permutations_into(v: &mut Vec<u32>, k: usize, out: &mut BTreeSet<Vec<u32>>) {
    if k == v.len() {
        out.insert(v.clone());
        return;
    }
    let mut seen = BTreeSet::new();
    for i in k..v.len() {
        if !seen.insert(v[i]) {
            continue;
        }
        v.swap(k, i);
        permutations_into(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Left-hand side of Newton's identity
/// `sum_{k=0}^{n} (-1)^k e_{n-k} p_{k+h}` with `p_0 = n`, `e_0 = 1`.
/// It is identically zero.
pub fn newton_residual(n: usize, h: u32) -> MultiPoly {
    let p = |j: u32| {
        if j == 0 {
            MultiPoly::constant(n, BigRat::from_integer((n as i64).into()))
        } else {
            power_sum(j, n)
        }
    };
    let mut acc = MultiPoly::zero(n);
    for k in 0..=n {
        let term = &elementary(n - k, n) * &p(k as u32 + h);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
