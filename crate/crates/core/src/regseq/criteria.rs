//! Closed forms and special-case criteria.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::witness::{eval_generator, RootPoint};
use super::{DegreeSet, Evidence, Family, Method, Status, Verdict};
use crate::arith::{binomial_i, BigRat};
use crate::error::{Error, Result};
use crate::poly::{CyclotomicField, UniPoly};

/// `d = gcd(A)` and `A / d`; `p_A(n)` and `p_{A/d}(n)` are regular together.
pub fn normalize(set: &DegreeSet) -> Result<(u64, DegreeSet)> {
    if set.family() != Family::Power {
        return Err(Error::Precondition("normalize applies to power sums".into()));
    }
    let d = set.degrees().iter().fold(0u64, |g, &a| g.gcd(&a));
    let reduced = DegreeSet::from_degrees(
        Family::Power,
        set.degrees().iter().map(|a| a / d).collect(),
    )?;
    Ok((d, reduced))
}

/// `sum(A) - n + 1`.
pub fn critical_degree(set: &DegreeSet) -> u64 {
    set.degrees().iter().sum::<u64>() + 1 - set.n() as u64
}

/// Closed form for two variables: `p_a, p_b` is regular iff `a/d` or `b/d` is
/// even (`d = gcd`), and `h_a, h_b` iff `gcd(a+1, b+1) = 1`.
pub fn check_pair(set: &DegreeSet) -> Result<Verdict> {
    if set.n() != 2 {
        return Err(Error::Precondition("check_pair needs n = 2".into()));
    }
    let (a, b) = (set.degrees()[0], set.degrees()[1]);
    let (regular, identity, point) = match set.family() {
        Family::Power => {
            let d = a.gcd(&b);
            let regular = (a / d) % 2 == 0 || (b / d) % 2 == 0;
            let point = RootPoint::new(vec![
                Some(Ratio::zero()),
                Some(Ratio::new(1, 2 * d as i64)),
            ]);
            (regular, format!("{a}/{d} = {}, {b}/{d} = {}", a / d, b / d), point)
        }
        Family::Complete => {
            let g = (a + 1).gcd(&(b + 1));
            let point = RootPoint::new(vec![Some(Ratio::new(1, g as i64)), Some(Ratio::zero())]);
            (g == 1, format!("gcd({}, {}) = {g}", a + 1, b + 1), point)
        }
    };
    let evidence = if regular {
        Evidence::Identity(identity)
    } else {
        Evidence::Witness(point.to_witness()?)
    };
    let status = if regular { Status::Regular } else { Status::NotRegular };
    Ok(Verdict::decided(status, Method::ClosedForm, evidence, set))
}

/// `f_b(x) = 1 + x^b + (-1)^b (x+1)^b = p_b(x, 1, -1-x)`.
pub fn triple_polynomial(b: u64) -> UniPoly {
    let b = b as i64;
    let sign = if b % 2 == 0 { 1 } else { -1 };
    let mut c: Vec<BigRat> = (0..=b)
        .map(|k| BigRat::from_integer(binomial_i(b, k) * sign))
        .collect();
    c[0] += BigRat::from_integer(1.into());
    c[b as usize] += BigRat::from_integer(1.into());
    UniPoly::from_coeffs(c)
}

/// For `A = {1, a, b}` with `6 | ab`: regular iff `gcd(f_a, f_b) = 1`.
pub fn gcd_criterion_triple(a: u64, b: u64) -> Result<bool> {
    if !(1 < a && a < b) || !(a * b).is_multiple_of(6) {
        return Err(Error::Precondition(format!(
            "gcd criterion needs 1 < a < b and 6 | ab, got ({a}, {b})"
        )));
    }
    Ok(triple_polynomial(a).gcd(&triple_polynomial(b))?.is_one())
}

/// Eisenstein at 3 for `f_b(x + 1)`, `b = 3^u (3^v + 1)`.
pub fn eisenstein_family_check(u: u32, v: u32) -> Result<bool> {
    if u < 1 {
        return Err(Error::Precondition("eisenstein family needs u >= 1".into()));
    }
    let b = 3u64
        .checked_pow(u)
        .and_then(|x| x.checked_mul(3u64.checked_pow(v)? + 1))
        .ok_or_else(|| Error::Precondition("b overflows".into()))?;
    triple_polynomial(b)
        .shift(&BigRat::from_integer(1.into()))
        .eisenstein_at(3)
}

/// For `A = {a, b, c}` with `gcd 1` and `3 | abc`: the only unimodular
/// candidates are permutations of `(1, rho, rho^2)`, and the generator of
/// degree divisible by 3 takes the value 3 there.
pub fn verify_modulo1(set: &DegreeSet) -> Result<bool> {
    let d = set.degrees().iter().fold(0u64, |g, &a| g.gcd(&a));
    if set.family() != Family::Power || set.n() != 3 || d != 1 {
        return Err(Error::Precondition(
            "verify_modulo1 needs three power sums with gcd 1".into(),
        ));
    }
    let Some(&a) = set.degrees().iter().find(|a| *a % 3 == 0) else {
        return Err(Error::Precondition("no degree divisible by 3".into()));
    };
    let k = CyclotomicField::new(3);
    let rho = k.generator();
    let orders = [[0u64, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let three = k.rational(BigRat::from_integer(3.into()));
    for ord in orders {
        let pt: Vec<_> = ord.iter().map(|&e| rho.pow(e)).collect();
        if eval_generator(Family::Power, a, &pt)? != three {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conjectured answer for three power sums with gcd 1: `6 | abc`.
pub fn n3_power_prediction(set: &DegreeSet) -> bool {
    set.degrees().iter().product::<u64>() % 6 == 0
}

/// Conditions (1), (2), (3) for four power sums: (1) two even degrees, one
/// multiple of 3 and one of 4; (2) the even part has an even quotient by its
/// gcd; (3) no `{d, 2d, 5d}`.
pub fn n4_power_conditions(set: &DegreeSet) -> [bool; 3] {
    let a = set.degrees();
    let count = |m: u64| a.iter().filter(|x| *x % m == 0).count();
    let c1 = count(2) >= 2 && count(3) >= 1 && count(4) >= 1;
    let evens: Vec<u64> = a.iter().copied().filter(|x| x % 2 == 0).collect();
    let d = evens.iter().fold(0u64, |g, &x| g.gcd(&x));
    let c2 = evens.iter().any(|x| (x / d) % 2 == 0);
    let c3 = !a.iter().any(|&d| set.contains(2 * d) && set.contains(5 * d));
    [c1, c2, c3]
}

/// Conditions (1), (2), (3) for three complete symmetric polynomials:
/// `6 | abc`; `gcd(a+1, b+1, c+1) = 1`; no `t > 2` with every `d + 2` equal
/// to 0 or 1 mod `t`.
pub fn n3_complete_conditions(set: &DegreeSet) -> [bool; 3] {
    let a = set.degrees();
    let c1 = a.iter().product::<u64>() % 6 == 0;
    let c2 = a.iter().fold(0u64, |g, &x| g.gcd(&(x + 1))) == 1;
    let max = a.iter().copied().max().unwrap_or(0);
    let c3 = (3..=max + 2).all(|t| a.iter().any(|x| (x + 2) % t > 1));
    [c1, c2, c3]
}
