//! The rank test: `(g_a : a in A)` is regular iff its ideal contains every
//! form of degree `sum(A) - n + 1`.
//!
//! Two equivalent matrices are available. The monomial basis works in
//! `Q[x_1..x_n]` at that single degree. The invariant basis works in
//! `Q[e_1..e_n]` (weights `1..n`), where regularity is the same property; the
//! quotient there has top degree `sum(A) - n(n+1)/2`, so the ideal must contain
//! all forms of the `n` weighted degrees just above it, after which every
//! higher degree follows by multiplying with some `e_i`. The invariant
//! matrices are much smaller.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::One;

use super::matrix::{random_primes, rank_exact, rank_modular, SparseMatrix};
use super::{DegreeSet, Family, Strategy};
use crate::arith::{binomial_i, BigInt};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::symfunc::NewtonTable;

/// `Auto` picks the monomial basis while it has at most this many columns.
pub const MONOMIAL_COLUMN_LIMIT: u64 = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Basis {
    #[default]
    Auto,
    Monomial,
    Invariant,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Auto => "auto",
            Basis::Monomial => "monomial",
            Basis::Invariant => "invariant",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Basis::Auto),
            "monomial" => Ok(Basis::Monomial),
            "invariant" => Ok(Basis::Invariant),
            other => Err(Error::Precondition(format!("unknown basis {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOutcome {
    /// The basis actually used (never `Auto`).
    pub basis: Basis,
    /// Degrees whose matrices were tested: the critical degree in the
    /// monomial basis, `n` consecutive weighted degrees in the invariant one.
    pub degrees: Vec<u64>,
    /// Sum over the tested degrees.
    pub rank: u64,
    pub expected_rank: u64,
    /// Primes used, in order.
    pub primes: Vec<u64>,
    /// `rank` is exact over `Q` (always the case when full).
    pub exact: bool,
}

impl RankOutcome {
    pub fn is_full(&self) -> bool {
        self.rank == self.expected_rank
    }
}

fn generator_terms(family: Family, n: usize, a: u64) -> Vec<Vec<u32>> {
    let a = a as u32;
    match family {
        Family::Power => (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = a;
                e
            })
            .collect(),
        Family::Complete => monomials_of_degree(n, a),
    }
}

/// Rows `mu * g_a` for `a in A`, `deg mu = D - a`; columns are the degree-`D`
/// monomials in descending graded-lex order. Generators with `a > D`
/// contribute no rows.
pub fn build_degree_matrix(set: &DegreeSet, d: u64) -> SparseMatrix {
    degree_matrix(set.family(), set.n(), set.degrees(), d)
}

fn degree_matrix(family: Family, n: usize, degrees: &[u64], d: u64) -> SparseMatrix {
    let cols = monomials_of_degree(n, d as u32);
    let index: HashMap<&[u32], usize> = cols
        .iter()
        .enumerate()
        .map(|(j, e)| (e.as_slice(), j))
        .collect();
    let mut m = SparseMatrix::new(cols.len());
    let one = BigInt::one();
    for &a in degrees.iter().filter(|&&a| a <= d) {
        let terms = generator_terms(family, n, a);
        for mu in monomials_of_degree(n, (d - a) as u32) {
            let row = terms
                .iter()
                .map(|t| {
                    let e: Vec<u32> = t.iter().zip(&mu).map(|(x, y)| x + y).collect();
                    (index[e.as_slice()], one.clone())
                })
                .collect();
            m.push_row(row);
        }
    }
    m
}

/// Exponent vectors `gamma` with `sum (i+1) gamma_i = w`, lexicographically
/// descending.
pub fn weighted_monomials(n: usize, w: u64) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == n {
            if left.is_multiple_of(n as u64) {
                cur.push((left / n as u64) as u32);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let weight = (i + 1) as u64;
        for k in (0..=left / weight).rev() {
            cur.push(k as u32);
            rec(i + 1, n, left - k * weight, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, w, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn e_basis_generators(set: &DegreeSet) -> Vec<(u64, MultiPoly)> {
    let n = set.n();
    let mut table = match set.family() {
        Family::Power => NewtonTable::power(n),
        Family::Complete => NewtonTable::complete(n),
    };
    set.degrees()
        .iter()
        .map(|&a| (a, table.get(a as usize).into_poly()))
        .collect()
}

fn invariant_matrix_from(n: usize, gens: &[(u64, MultiPoly)], w: u64) -> SparseMatrix {
    let cols = weighted_monomials(n, w);
    let index: HashMap<&[u32], usize> = cols
        .iter()
        .enumerate()
        .map(|(j, e)| (e.as_slice(), j))
        .collect();
    let mut m = SparseMatrix::new(cols.len());
    for (a, g) in gens.iter().filter(|(a, _)| *a <= w) {
        let terms: Vec<(&Vec<u32>, BigInt)> = g
            .terms()
            .map(|(e, c)| {
                debug_assert!(c.is_integer());
                (&e.0, c.to_integer())
            })
            .collect();
        for gamma in weighted_monomials(n, w - a) {
            let row = terms
                .iter()
                .map(|(t, c)| {
                    let e: Vec<u32> = t.iter().zip(&gamma).map(|(x, y)| x + y).collect();
                    (index[e.as_slice()], c.clone())
                })
                .collect();
            m.push_row(row);
        }
    }
    m
}

/// Rows `e^gamma * G_a` with `G_a` the generator written in `e_1..e_n`;
/// columns are the `e`-monomials of weighted degree `w`.
pub fn build_invariant_matrix(set: &DegreeSet, w: u64) -> SparseMatrix {
    invariant_matrix_from(set.n(), &e_basis_generators(set), w)
}

fn monomial_columns(set: &DegreeSet) -> BigInt {
    let n = set.n() as i64;
    let d = super::critical_degree(set) as i64;
    binomial_i(d + n - 1, n - 1)
}

fn resolve(basis: Basis, set: &DegreeSet) -> Basis {
    match basis {
        Basis::Auto if monomial_columns(set) <= BigInt::from(MONOMIAL_COLUMN_LIMIT) => {
            Basis::Monomial
        }
        Basis::Auto => Basis::Invariant,
        other => other,
    }
}

/// Run the rank test. A block is full as soon as one prime gives full rank;
/// a block deficient modulo all `prime_count` primes is recomputed exactly
/// under [`Strategy::Strict`].
pub fn rank_test(
    set: &DegreeSet,
    basis: Basis,
    strategy: Strategy,
    prime_count: usize,
    seed: u64,
) -> RankOutcome {
    let basis = resolve(basis, set);
    let n = set.n() as u64;
    let sum: u64 = set.degrees().iter().sum();
    let (degrees, blocks): (Vec<u64>, Vec<SparseMatrix>) = match basis {
        Basis::Invariant => {
            let start = sum + 1 - n * (n + 1) / 2;
            let gens = e_basis_generators(set);
            (start..start + n)
                .map(|w| (w, invariant_matrix_from(set.n(), &gens, w)))
                .unzip()
        }
        _ => {
            let d = super::critical_degree(set);
            (vec![d], vec![build_degree_matrix(set, d)])
        }
    };
    let primes = random_primes(prime_count.max(1), seed);
    let mut used = 0;
    let mut rank = 0u64;
    let mut expected = 0u64;
    let mut exact = true;
    for m in &blocks {
        expected += m.ncols() as u64;
        let bound = m.nrows().min(m.ncols());
        let mut best = 0;
        for (i, &p) in primes.iter().enumerate() {
            used = used.max(i + 1);
            best = best.max(rank_modular(m, p).expect("primes are valid"));
            if best == bound {
                break;
            }
        }
        if best < bound {
            if strategy == Strategy::Strict {
                best = rank_exact(m);
            } else {
                exact = false;
            }
        }
        rank += best as u64;
    }
    RankOutcome {
        basis,
        degrees,
        rank,
        expected_rank: expected,
        primes: primes[..used].to_vec(),
        exact,
    }
}

const CERTIFY_SEED: u64 = 0x5eed;

/// Exact rank, skipping elimination over `Q` when a modular rank already
/// reaches `min(rows, cols)`.
fn certified_rank(m: &SparseMatrix) -> usize {
    let bound = m.nrows().min(m.ncols());
    for p in random_primes(2, CERTIFY_SEED) {
        if rank_modular(m, p).expect("valid prime") == bound {
            return bound;
        }
    }
    rank_exact(m)
}

/// Dimension of the degree-`k` part of `Q[x_1..x_n] / (g_a : a in A)`.
pub fn hilbert_function(set: &DegreeSet, k: u64) -> BigInt {
    let m = build_degree_matrix(set, k);
    BigInt::from(m.ncols()) - BigInt::from(certified_rank(&m))
}

/// Whether the homogeneous `f` lies in the ideal generated by `g_a`,
/// `a in degrees`, in as many variables as `f` has. The generators need not
/// be as many as the variables.
pub fn ideal_membership(f: &MultiPoly, family: Family, degrees: &[u64]) -> Result<bool> {
    if degrees.contains(&0) {
        return Err(Error::InvalidDegreeSet("degrees must be positive".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let Some(k) = f.total_degree() else {
        return Ok(true);
    };
    let n = f.arity();
    let mut m = degree_matrix(family, n, degrees, k as u64);
    let base = certified_rank(&m);
    let cols = monomials_of_degree(n, k);
    let index: HashMap<&[u32], usize> = cols
        .iter()
        .enumerate()
        .map(|(j, e)| (e.as_slice(), j))
        .collect();
    let lcm = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let row = f
        .terms()
        .map(|(e, c)| (index[e.0.as_slice()], (c * &lcm).to_integer()))
        .collect();
    m.push_row(row);
    // appending a row raises the rank by at most one
    for p in random_primes(2, CERTIFY_SEED) {
        if rank_modular(&m, p).expect("valid prime") > base {
            return Ok(false);
        }
    }
    if base == m.ncols() {
        return Ok(true);
    }
    Ok(rank_exact(&m) == base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::power_sum;

    fn p(d: &[u64]) -> DegreeSet {
        DegreeSet::from_degrees(Family::Power, d.to_vec()).unwrap()
    }

    #[test]
    fn matrix_shapes() {
        let m = build_degree_matrix(&p(&[1, 2, 3]), 4);
        assert_eq!((m.nrows(), m.ncols()), (19, 15));
        assert!(m.is_zero_one());
        assert!(m.rows().iter().all(|r| r.len() == 3));
        let m = build_degree_matrix(&p(&[1, 2]), 2);
        assert_eq!((m.nrows(), m.ncols()), (3, 3));
    }

    #[test]
    fn rank_examples() {
        let m = build_degree_matrix(&p(&[1, 2, 3]), 4);
        assert_eq!(rank_exact(&m), 15);
        let m = build_degree_matrix(&p(&[1, 3, 5]), 7);
        assert_eq!(m.ncols(), 36);
        assert!(rank_exact(&m) < 36);
    }

    #[test]
    fn weighted_monomial_counts() {
        // partitions of w into parts of size at most n
        assert_eq!(weighted_monomials(3, 4).len(), 4);
        assert_eq!(weighted_monomials(2, 5).len(), 3);
        assert_eq!(weighted_monomials(1, 7), vec![vec![7]]);
        for w in weighted_monomials(4, 12) {
            assert_eq!(w.iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k).sum::<u32>(), 12);
        }
    }

    #[test]
    fn both_bases_agree_on_small_sets() {
        for degrees in [
            vec![1u64, 2, 3],
            vec![1, 3, 5],
            vec![2, 3, 4],
            vec![1, 2, 4],
            vec![1, 4, 6],
            vec![2, 3, 10],
        ] {
            for family in [Family::Power, Family::Complete] {
                let s = DegreeSet::from_degrees(family, degrees.clone()).unwrap();
                let mono = rank_test(&s, Basis::Monomial, Strategy::Strict, 2, 1);
                let inv = rank_test(&s, Basis::Invariant, Strategy::Strict, 2, 1);
                assert_eq!(mono.is_full(), inv.is_full(), "{s}");
                assert!(mono.exact && inv.exact);
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        let s = p(&[1, 2, 3]);
        assert_eq!(hilbert_function(&s, 0), BigInt::from(1));
        assert_eq!(hilbert_function(&s, 4), BigInt::from(0));
    }

    #[test]
    fn membership_examples() {
        assert!(ideal_membership(&power_sum(5, 4), Family::Power, &[1, 2]).unwrap());
        assert!(!ideal_membership(&power_sum(2, 3), Family::Power, &[1]).unwrap());
        assert!(ideal_membership(&power_sum(10, 4), Family::Power, &[2, 4]).unwrap());
        assert!(!ideal_membership(&power_sum(4, 4), Family::Power, &[1, 2]).unwrap());
        let mixed = &power_sum(2, 2) + &power_sum(1, 2);
        assert!(matches!(
            ideal_membership(&mixed, Family::Power, &[1]),
            Err(Error::NotHomogeneous)
        ));
    }
}
