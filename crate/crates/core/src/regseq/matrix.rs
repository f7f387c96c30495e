//! Sparse integer matrices and their rank, modulo a prime or over `Q`.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime_u64, BigInt};
use crate::error::{Error, Result};

/// Rows are kept sorted by column with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| (j, BigInt::from(v)))
                    .collect(),
            );
        }
        m
    }

    /// Entries may come in any order; repeated columns are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (j, v) in entries {
            assert!(j < self.ncols, "column {j} out of range");
            match row.last_mut() {
                Some((k, acc)) if *k == j => *acc += v,
                _ => row.push((j, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Every stored entry equals 1.
    pub fn is_zero_one(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .all(|(_, v)| *v == BigInt::from(1))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); self.ncols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn to_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    u64::try_from(r).expect("residue below p")
}

/// `r - s * pivot` on sorted sparse rows mod `p`.
fn axpy_mod(r: &[(usize, u64)], s: u64, pivot: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let neg = (p - s) % p;
    let mut out = Vec::with_capacity(r.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < pivot.len() {
        let take_r = j >= pivot.len() || (i < r.len() && r[i].0 < pivot[j].0);
        let take_p = i >= r.len() || (j < pivot.len() && pivot[j].0 < r[i].0);
        if take_r {
            out.push(r[i]);
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, mul_mod(neg, pivot[j].1, p)));
            j += 1;
        } else {
            let v = (r[i].1 + mul_mod(neg, pivot[j].1, p)) % p;
            if v != 0 {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `F_p`. Rows are processed sparsest first and each is reduced
/// against the pivots by leading column only.
pub fn rank_modular(m: &SparseMatrix, p: u64) -> Result<usize> {
    if p <= 2 || !is_prime_u64(p) || p >= 1 << 63 {
        return Err(Error::NotPrime(p));
    }
    let mut rows: Vec<Vec<(usize, u64)>> = m
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(j, v)| (*j, to_mod(v, p)))
                .filter(|(_, v)| *v != 0)
                .collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| (r.len(), r[0].0));
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; m.ncols];
    let mut rank = 0;
    for mut r in rows {
        while let Some(&(c, v)) = r.first() {
            match &pivots[c] {
                Some(pv) => r = axpy_mod(&r, v, pv, p),
                None => {
                    let inv = inv_mod(v, p);
                    for e in r.iter_mut() {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots[c] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == m.ncols {
            break;
        }
    }
    Ok(rank)
}

fn content(r: &[(usize, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in r {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            break;
        }
    }
    g
}

/// `a * r - b * pivot`, leading entries cancelling.
fn combine_exact(
    r: &[(usize, BigInt)],
    a: &BigInt,
    pivot: &[(usize, BigInt)],
    b: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(r.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < pivot.len() {
        let take_r = j >= pivot.len() || (i < r.len() && r[i].0 < pivot[j].0);
        let take_p = i >= r.len() || (j < pivot.len() && pivot[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, &r[i].1 * a));
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, -(&pivot[j].1 * b)));
            j += 1;
        } else {
            let v = &r[i].1 * a - &pivot[j].1 * b;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `Q` by fraction-free elimination: every row is kept primitive,
/// so entries stay as small as the row space allows.
pub fn rank_exact(m: &SparseMatrix) -> usize {
    let mut rows: Vec<Vec<(usize, BigInt)>> =
        m.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    rows.sort_by_key(|r| (r.len(), r[0].0));
    let mut pivots: Vec<Option<Vec<(usize, BigInt)>>> = vec![None; m.ncols];
    let mut rank = 0;
    for mut r in rows {
        while let Some((c, v)) = r.first().cloned() {
            match &pivots[c] {
                Some(pv) => {
                    let g = pv[0].1.gcd(&v);
                    let a = &pv[0].1 / &g;
                    let b = &v / &g;
                    r = combine_exact(&r, &a, pv, &b);
                    let g = content(&r);
                    if !g.is_zero() && g != BigInt::from(1) {
                        for e in r.iter_mut() {
                            e.1 /= &g;
                        }
                    }
                }
                None => {
                    let g = content(&r);
                    let sign = if r[0].1.is_negative() { -g } else { g };
                    for e in r.iter_mut() {
                        e.1 /= &sign;
                    }
                    pivots[c] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == m.ncols {
            break;
        }
    }
    rank
}

/// `count` distinct primes in `[2^61, 2^62)`, drawn from a ChaCha stream
/// seeded with `seed`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let cand = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(cand) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}
