//! Necessary conditions for regularity. A failure is a proof of
//! non-regularity; a pass decides nothing.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::witness::{blocks, power_zero, witness_verify, RootPoint};
use super::{DegreeSet, Evidence, Family, Method};
use crate::arith::BigInt;
use crate::error::{Error, Result};
use crate::poly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub method: Method,
    pub reason: String,
    pub evidence: Evidence,
    /// The witness as a root-of-unity point, when there is one.
    pub point: Option<RootPoint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FilterResult {
    Pass,
    Fail(Failure),
}

impl FilterResult {
    pub fn passed(&self) -> bool {
        matches!(self, FilterResult::Pass)
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            FilterResult::Fail(f) => Some(f),
            FilterResult::Pass => None,
        }
    }
}

fn fail_identity(method: Method, reason: String) -> FilterResult {
    FilterResult::Fail(Failure {
        method,
        evidence: Evidence::Identity(reason.clone()),
        reason,
        point: None,
    })
}

/// Fails with a witness when `point` really is a common zero, and with the
/// bare identity otherwise.
fn fail_with_point(method: Method, reason: String, set: &DegreeSet, point: Option<RootPoint>) -> FilterResult {
    let checked = point.and_then(|p| {
        let w = p.to_witness().ok()?;
        witness_verify(&w, set).ok()?.then_some((p, w))
    });
    match checked {
        Some((p, w)) => FilterResult::Fail(Failure {
            method,
            reason,
            evidence: Evidence::Witness(w),
            point: Some(p),
        }),
        None => fail_identity(method, reason),
    }
}

fn require(set: &DegreeSet, family: Family, n: Option<usize>, what: &str) -> Result<()> {
    if set.family() != family {
        return Err(Error::Precondition(format!("{what} needs the {family} family")));
    }
    if let Some(n) = n {
        if set.n() != n {
            return Err(Error::Precondition(format!("{what} needs n = {n}")));
        }
    }
    Ok(())
}

/// `n!` must divide the product of the degrees.
pub fn factorial_filter(set: &DegreeSet) -> FilterResult {
    let n = set.n() as u64;
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let prod: BigInt = set.degrees().iter().map(|&a| BigInt::from(a)).product();
    if (&prod % &fact).is_zero() {
        FilterResult::Pass
    } else {
        fail_identity(
            Method::FactorialFilter,
            format!("{n}! = {fact} does not divide {prod}"),
        )
    }
}

fn one_minus_q_pow(k: usize) -> UniPoly {
    let mut c = vec![0i64; k + 1];
    c[0] = 1;
    c[k] -= 1;
    UniPoly::from_ints(&c)
}

/// `prod (1 - q^{a_i}) / prod_{i <= n} (1 - q^i)` if the division is exact.
pub fn hilbert_quotient(set: &DegreeSet) -> Option<UniPoly> {
    let num = set
        .degrees()
        .iter()
        .fold(UniPoly::one(), |acc, &a| &acc * &one_minus_q_pow(a as usize));
    let den = (1..=set.n()).fold(UniPoly::one(), |acc, i| &acc * &one_minus_q_pow(i));
    num.divide_exact(&den).ok().flatten()
}

/// The Hilbert series of the quotient by a regular sequence of symmetric
/// polynomials, taken in the ring of symmetric polynomials, must be a
/// polynomial.
pub fn hilbert_integrality_filter(set: &DegreeSet) -> FilterResult {
    match hilbert_quotient(set) {
        Some(_) => FilterResult::Pass,
        None => fail_identity(
            Method::HilbertIntegralityFilter,
            format!(
                "prod (1-q^a) over {:?} is not divisible by prod (1-q^i), i <= {}",
                set.degrees(),
                set.n()
            ),
        ),
    }
}

/// For `2 <= c <= n`, at least `floor(n/c)` degrees must be multiples of `c`.
pub fn roots_of_unity_filter(set: &DegreeSet) -> Result<FilterResult> {
    require(set, Family::Power, None, "roots_of_unity_filter")?;
    let n = set.n();
    for c in 2..=n {
        let divisible: Vec<u64> = set
            .degrees()
            .iter()
            .copied()
            .filter(|a| a % c as u64 == 0)
            .collect();
        let q = n / c;
        if divisible.len() < q {
            let point = power_zero(&divisible, q)
                .map(|y| blocks(c, &y, n))
                .or_else(|| power_zero(set.degrees(), n));
            let reason = format!(
                "{} multiple(s) of {c} among the degrees, fewer than floor({n}/{c}) = {q}",
                divisible.len()
            );
            return Ok(fail_with_point(Method::RootsOfUnityFilter, reason, set, point));
        }
    }
    Ok(FilterResult::Pass)
}

/// With `E` the even degrees and `d = gcd(E)`, some `a/d` (`a in E`) must
/// be even; otherwise `(1, -1, zeta_{2d}, -zeta_{2d})` is a common zero.
pub fn even_part_filter(set: &DegreeSet) -> Result<FilterResult> {
    require(set, Family::Power, Some(4), "even_part_filter")?;
    let evens: Vec<u64> = set.degrees().iter().copied().filter(|a| a % 2 == 0).collect();
    let d = evens.iter().fold(0u64, |g, &a| g.gcd(&a));
    if evens.iter().any(|a| (a / d) % 2 == 0) {
        return Ok(FilterResult::Pass);
    }
    let half = Ratio::new(1, 2);
    let point = if evens.is_empty() {
        RootPoint::new(vec![Some(Ratio::zero()), Some(half), None, None])
    } else {
        let t = Ratio::new(1, 2 * d as i64);
        RootPoint::new(vec![Some(Ratio::zero()), Some(half), Some(t), Some(t + half)])
    };
    let reason = if evens.is_empty() {
        "no even degree".to_string()
    } else {
        format!("every even degree divided by {d} is odd")
    };
    Ok(fail_with_point(Method::EvenPartFilter, reason, set, Some(point)))
}

/// Candidate zeros for `{d, 2d, 5d, a}`: `d`-th roots of `(0, 1, rho, rho^2)`
/// and of `zeta_8 (1, i, -1, -i)`, both of which kill `p_1, p_2, p_5`.
fn subset_125_point(set: &DegreeSet, d: u64) -> Option<RootPoint> {
    const MAX_ROOT_SEARCH: u64 = 4;
    if d > MAX_ROOT_SEARCH {
        return None;
    }
    let bases = [
        vec![None, Some(Ratio::zero()), Some(Ratio::new(1, 3)), Some(Ratio::new(2, 3))],
        (0..4).map(|j| Some(Ratio::new(2 * j + 1, 8))).collect(),
    ];
    let combos = d.pow(4);
    for base in &bases {
        for mut code in 0..combos {
            let coords = base
                .iter()
                .map(|c| {
                    let j = (code % d) as i64;
                    code /= d;
                    c.map(|t| (t + Ratio::from_integer(j)) / Ratio::from_integer(d as i64))
                })
                .collect();
            let p = RootPoint::new(coords);
            let w = p.to_witness().ok()?;
            if witness_verify(&w, set).ok()? {
                return Some(p);
            }
        }
    }
    None
}

/// No `{d, 2d, 5d}` inside `A`, since `p_{5d}(4)` lies in `(p_d(4), p_{2d}(4))`.
pub fn subset_125_filter(set: &DegreeSet) -> Result<FilterResult> {
    require(set, Family::Power, Some(4), "subset_125_filter")?;
    let Some(&d) = set
        .degrees()
        .iter()
        .find(|&&d| set.contains(2 * d) && set.contains(5 * d))
    else {
        return Ok(FilterResult::Pass);
    };
    let reason = format!("{{{d}, {}, {}}} is contained in the degree set", 2 * d, 5 * d);
    Ok(match subset_125_point(set, d) {
        Some(p) => fail_with_point(Method::Subset125Filter, reason, set, Some(p)),
        None => FilterResult::Fail(Failure {
            method: Method::Subset125Filter,
            reason,
            evidence: Evidence::IdealMembership {
                member: 5 * d,
                generators: vec![d, 2 * d],
            },
            point: None,
        }),
    })
}

/// Fails at `t > 2` when every `a + 2` is `0` or `1` mod `t`: then
/// `(1, zeta_t, zeta_t^2, 0, ...)` is a common zero. Needs `n >= 3`; for
/// `n < 3` it always passes.
pub fn h_congruence_filter(set: &DegreeSet) -> Result<FilterResult> {
    require(set, Family::Complete, None, "h_congruence_filter")?;
    let n = set.n();
    if n < 3 {
        return Ok(FilterResult::Pass);
    }
    let max = *set.degrees().last().expect("nonempty");
    for t in 3..=max + 2 {
        if set.degrees().iter().all(|a| (a + 2) % t <= 1) {
            let ti = t as i64;
            let mut coords = vec![Some(Ratio::zero()), Some(Ratio::new(1, ti)), Some(Ratio::new(2, ti))];
            coords.resize(n, None);
            let reason = format!("every a + 2 is 0 or 1 mod {t}");
            return Ok(fail_with_point(
                Method::HCongruenceFilter,
                reason,
                set,
                Some(RootPoint::new(coords)),
            ));
        }
    }
    Ok(FilterResult::Pass)
}

/// `gcd(a + 1 : a in A)` must be 1; otherwise `(zeta_g, 1, 0, ...)` is a
/// common zero. Passes for `n = 1`.
pub fn h_gcd_filter(set: &DegreeSet) -> Result<FilterResult> {
    require(set, Family::Complete, None, "h_gcd_filter")?;
    let n = set.n();
    let g = set.degrees().iter().fold(0u64, |g, &a| g.gcd(&(a + 1)));
    if n < 2 || g == 1 {
        return Ok(FilterResult::Pass);
    }
    let mut coords = vec![Some(Ratio::new(1, g as i64)), Some(Ratio::zero())];
    coords.resize(n, None);
    Ok(fail_with_point(
        Method::HGcdFilter,
        format!("gcd of a + 1 over the degrees is {g}"),
        set,
        Some(RootPoint::new(coords)),
    ))
}
