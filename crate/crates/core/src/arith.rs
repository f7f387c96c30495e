//! Exact scalars: big integers, reduced rationals, p-adic valuations and
//! base-p carry counting.
//!
//! `BigInt` and `BigRat` are the `num` crate types. `BigRational` keeps every
//! value in lowest terms with a positive denominator, so structural equality
//! is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub type BigRat = num_rational::BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// A p-adic valuation. Zero has valuation `Infinity`, which compares above
/// every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PadicVal {
    Finite(i64),
    Infinity,
}

impl PadicVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == PadicVal::Infinity
    }
}

impl Ord for PadicVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => a.cmp(b),
            (PadicVal::Finite(_), PadicVal::Infinity) => Ordering::Less,
            (PadicVal::Infinity, PadicVal::Finite(_)) => Ordering::Greater,
            (PadicVal::Infinity, PadicVal::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for PadicVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for PadicVal {
    type Output = PadicVal;

    fn add(self, rhs: PadicVal) -> PadicVal {
        match (self, rhs) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => PadicVal::Finite(a + b),
            _ => PadicVal::Infinity,
        }
    }
}

impl fmt::Display for PadicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVal::Finite(v) => write!(f, "{v}"),
            PadicVal::Infinity => f.write_str("inf"),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Exponent of `p` in a nonzero integer (the caller guarantees `x != 0`).
fn int_valuation(x: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// `v_p(x)` for a rational `x`; `Infinity` for zero.
pub fn padic_valuation(x: &BigRat, p: u64) -> Result<PadicVal> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(PadicVal::Infinity);
    }
    Ok(PadicVal::Finite(
        int_valuation(x.numer(), p) - int_valuation(x.denom(), p),
    ))
}

pub fn padic_valuation_int(x: &BigInt, p: u64) -> Result<PadicVal> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(PadicVal::Infinity);
    }
    Ok(PadicVal::Finite(int_valuation(x, p)))
}

/// Base-`p` digits of a nonnegative integer, least significant first.
pub fn digits_base_p(x: &BigInt, p: u64) -> Result<Vec<u64>> {
    if x.is_negative() {
        return Err(Error::Negative(x.to_string()));
    }
    let base = BigInt::from(p);
    let mut out = Vec::new();
    let mut x = x.clone();
    while !x.is_zero() {
        let (q, r) = x.div_rem(&base);
        out.push(r.to_u64().expect("digit fits"));
        x = q;
    }
    Ok(out)
}

/// Number of carries when adding `m` and `n` in base `p`.
pub fn carries_base_p(m: &BigInt, n: &BigInt, p: u64) -> Result<u32> {
    check_prime(p)?;
    let dm = digits_base_p(m, p)?;
    let dn = digits_base_p(n, p)?;
    let mut carry = 0u64;
    let mut count = 0;
    for i in 0..dm.len().max(dn.len()) {
        let s = dm.get(i).copied().unwrap_or(0) + dn.get(i).copied().unwrap_or(0) + carry;
        carry = u64::from(s >= p);
        count += carry as u32;
    }
    Ok(count)
}

/// Binomial coefficient `C(m, n)`; zero whenever `n < 0`, `n > m` or `m < 0`.
pub fn binomial(m: &BigInt, n: &BigInt) -> BigInt {
    if m.is_negative() || n.is_negative() || n > m {
        return BigInt::zero();
    }
    let k = std::cmp::min(n.clone(), m - n);
    let k = k.to_u64().expect("binomial lower index too large");
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (m - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_i(m: i64, n: i64) -> BigInt {
    binomial(&BigInt::from(m), &BigInt::from(n))
}

/// `base^exp` for a rational base and a possibly negative exponent.
fn range_product(lo: u64, hi: u64) -> BigInt {
    (lo..=hi).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomials `C(n_i, r_i)` along a path, each obtained from the previous one
/// by multiplying with ratios of factorials. Requires `r_i <= n_i`.
pub fn binomial_path(pairs: &[(u64, u64)]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(pairs.len());
    for (i, &(n, r)) in pairs.iter().enumerate() {
        if i == 0 {
            out.push(binomial_i(n as i64, r as i64));
            continue;
        }
        let (n0, r0) = pairs[i - 1];
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        // n!/n0!
        if n >= n0 {
            num *= range_product(n0 + 1, n);
        } else {
            den *= range_product(n + 1, n0);
        }
        // r0!/r!
        if r >= r0 {
            den *= range_product(r0 + 1, r);
        } else {
            num *= range_product(r + 1, r0);
        }
        // (n0-r0)!/(n-r)!
        let (m0, m) = (n0 - r0, n - r);
        if m0 >= m {
            num *= range_product(m + 1, m0);
        } else {
            den *= range_product(m0 + 1, m);
        }
        let next = &out[i - 1] * num / den;
        out.push(next);
    }
    out
}

pub fn rat_pow(base: &BigRat, exp: i64) -> BigRat {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

pub fn is_integer(x: &BigRat) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&int(18), 3), Ok(PadicVal::Finite(2)));
        assert_eq!(padic_valuation(&rat(2, 3), 3), Ok(PadicVal::Finite(-1)));
        assert_eq!(padic_valuation(&rat(-10, 3), 3), Ok(PadicVal::Finite(-1)));
        assert_eq!(padic_valuation(&int(0), 3), Ok(PadicVal::Infinity));
        assert_eq!(padic_valuation(&int(5), 6), Err(Error::NotPrime(6)));
        assert_eq!(padic_valuation(&int(5), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn carries_examples() {
        let c = |m: i64, n: i64| carries_base_p(&BigInt::from(m), &BigInt::from(n), 3).unwrap();
        assert_eq!(c(2, 2), 1);
        assert_eq!(c(3, 3), 0);
        assert_eq!(c(12345, 0), 0);
        assert_eq!(c(8, 1), 2);
        assert!(carries_base_p(&BigInt::from(-1), &BigInt::from(1), 3).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_i(4, 2), BigInt::from(6));
        assert_eq!(binomial_i(6, 3), BigInt::from(20));
        assert_eq!(binomial_i(4 - 1, 2), BigInt::from(3));
        assert_eq!(binomial_i(3, 4), BigInt::zero());
        assert_eq!(binomial_i(3, -1), BigInt::zero());
        assert_eq!(binomial_i(0, 0), BigInt::one());
    }

    #[test]
    fn padic_order() {
        assert!(PadicVal::Finite(100) < PadicVal::Infinity);
        assert!(PadicVal::Finite(-3) < PadicVal::Finite(2));
        assert_eq!(PadicVal::Finite(1) + PadicVal::Infinity, PadicVal::Infinity);
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn rationals_stay_reduced() {
        let x = rat(6, -4) + rat(1, 6);
        assert_eq!(x, rat(-4, 3));
        assert_eq!(x.numer().gcd(x.denom()), BigInt::one());
        assert!(x.denom().is_positive());
    }
}
