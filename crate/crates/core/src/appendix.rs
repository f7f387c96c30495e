//! Exact 3-adic checks on the sum
//! `S(h) = sum_{b=0}^{floor(h/3)} (-1)^(h-b)/(h-b) C(h-b, 2b) (2/3)^b`,
//! which vanishes only at `h = 3`.
//!
//! Writing `h = 3k + r`, the sum is re-indexed by `b -> k - b` so that the
//! summand of smallest 3-adic valuation sits at `b = 0` (or, when
//! `k = 1 mod 3` and `r != 1`, the first two summands together).

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{binomial_path, carries_base_p, padic_valuation, rat, rat_pow, BigInt, BigRat, PadicVal};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `h = 3k`, `k != 1 mod 3`.
    Case1,
    /// `h = 3k`, `k = 1 mod 3`.
    Case1Special,
    /// `h = 3k + 1`.
    Case2,
    /// `h = 3k + 2`, `k != 1 mod 3`.
    Case3,
    /// `h = 3k + 2`, `k = 1 mod 3`.
    Case3Special,
}

impl CaseTag {
    pub fn of(h: u64) -> Result<CaseTag> {
        if h <= 3 {
            return Err(Error::Precondition(format!("case analysis needs h > 3, got {h}")));
        }
        let k = h / 3;
        Ok(match (h % 3, k % 3 == 1) {
            (0, false) => CaseTag::Case1,
            (0, true) => CaseTag::Case1Special,
            (1, _) => CaseTag::Case2,
            (_, false) => CaseTag::Case3,
            (_, true) => CaseTag::Case3Special,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case1Special => "case1-special",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::Case3Special => "case3-special",
        }
    }

    pub fn is_special(self) -> bool {
        matches!(self, CaseTag::Case1Special | CaseTag::Case3Special)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sign / top * C(top, bottom) * (2/3)^pow`, kept unevaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub b: u64,
    pub negative: bool,
    pub top: u64,
    pub bottom: u64,
    pub pow: u64,
    pub binomial: BigInt,
    /// Exact 3-adic valuation (never infinite, the summand is nonzero).
    pub valuation: i64,
}

impl Summand {
    pub fn value(&self) -> BigRat {
        let num = &self.binomial << self.pow as usize;
        let den = BigInt::from(self.top) * num_traits::pow(BigInt::from(3), self.pow as usize);
        let v = BigRat::new(num, den);
        if self.negative {
            -v
        } else {
            v
        }
    }
}

fn v3_int(x: &BigInt) -> i64 {
    let three = BigInt::from(3);
    let mut x = x.clone();
    let mut v = 0;
    while !x.is_zero() && (&x % &three).is_zero() {
        x /= &three;
        v += 1;
    }
    v
}

fn v3_u64(mut x: u64) -> i64 {
    let mut v = 0;
    while x != 0 && x.is_multiple_of(3) {
        x /= 3;
        v += 1;
    }
    v
}

fn build_summands(parts: Vec<(u64, bool, u64, u64, u64)>) -> Vec<Summand> {
    let pairs: Vec<(u64, u64)> = parts.iter().map(|&(_, _, t, bo, _)| (t, bo)).collect();
    binomial_path(&pairs)
        .into_iter()
        .zip(parts)
        .map(|(binomial, (b, negative, top, bottom, pow))| {
            let valuation = v3_int(&binomial) - v3_u64(top) - pow as i64;
            Summand { b, negative, top, bottom, pow, binomial, valuation }
        })
        .collect()
}

/// Exact sum over a common denominator `lcm(top) * 3^max(pow)`.
fn sum_exact(terms: &[Summand]) -> BigRat {
    if terms.is_empty() {
        return BigRat::zero();
    }
    let max_pow = terms.iter().map(|t| t.pow).max().unwrap_or(0);
    let l = terms
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(&BigInt::from(t.top)));
    let mut num = BigInt::zero();
    for t in terms {
        let mut x = &t.binomial << t.pow as usize;
        x *= num_traits::pow(BigInt::from(3), (max_pow - t.pow) as usize);
        x *= &l / BigInt::from(t.top);
        if t.negative {
            num -= x;
        } else {
            num += x;
        }
    }
    BigRat::new(num, l * num_traits::pow(BigInt::from(3), max_pow as usize))
}

fn original_summands(h: u64) -> Vec<Summand> {
    build_summands(
        (0..=h / 3)
            .map(|b| (b, (h - b) % 2 == 1, h - b, 2 * b, b))
            .collect(),
    )
}

/// Summands of `S(h)` in the order and form they are written in.
pub fn sum_a1_summands(h: u64) -> Result<Vec<Summand>> {
    if h == 0 {
        return Err(Error::Precondition("S(h) needs h >= 1".into()));
    }
    Ok(original_summands(h))
}

/// Exact value of `S(h)`, `h >= 1`.
pub fn sum_a1(h: u64) -> Result<BigRat> {
    Ok(sum_exact(&sum_a1_summands(h)?))
}

/// Re-indexed summands `b -> k - b`:
/// * `h = 3k`:     `(-1)^b / (2k+b) C(2k+b, 3b) (2/3)^(k-b)`
/// * `h = 3k+1`: `(-1)^(b+1) / (2k+b+1) C(2k+b+1, 3b+1) (2/3)^(k-b)`
/// * `h = 3k+2`:   `(-1)^b / (2k+b+2) C(2k+b+2, 3b+2) (2/3)^(k-b)`
pub fn case_rewrite(h: u64) -> Result<Vec<Summand>> {
    CaseTag::of(h)?;
    let (k, r) = (h / 3, h % 3);
    Ok(build_summands(
        (0..=k)
            .map(|b| {
                let odd = b % 2 == 1;
                match r {
                    0 => (b, odd, 2 * k + b, 3 * b, k - b),
                    1 => (b, !odd, 2 * k + b + 1, 3 * b + 1, k - b),
                    _ => (b, odd, 2 * k + b + 2, 3 * b + 2, k - b),
                }
            })
            .collect(),
    ))
}

fn f_of(tag: CaseTag, k: u64) -> Option<i64> {
    match tag {
        CaseTag::Case1 | CaseTag::Case1Special => Some(v3_u64(k - 1)),
        CaseTag::Case2 => None,
        CaseTag::Case3 | CaseTag::Case3Special => Some(v3_u64(2 * k + 1)),
    }
}

/// Closed form of the first two re-indexed summands:
/// `-(2^(k-1)/3^k) (k-1)(2k^2+k+1)/k` for `h = 3k`,
/// `-(2^(k-2)/(5 3^k)) (2k+1)(2k^3+k^2-k-10)` for `h = 3k+2`.
pub fn combined_closed_form(h: u64) -> Result<BigRat> {
    check_special(h)?;
    let k = (h / 3) as i64;
    let two = rat(2, 1);
    let three_k = rat_pow(&rat(3, 1), k);
    Ok(if h.is_multiple_of(3) {
        -(rat_pow(&two, k - 1) / three_k) * rat((k - 1) * (2 * k * k + k + 1), k)
    } else {
        -(rat_pow(&two, k - 2) / (three_k * rat(5, 1)))
            * rat((2 * k + 1) * (2 * k * k * k + k * k - k - 10), 1)
    })
}

fn check_special(h: u64) -> Result<()> {
    if h <= 3 || (h % 9 != 3 && h % 9 != 5) {
        return Err(Error::Precondition(format!(
            "combined leading term needs h > 3 with h = 3 or 5 mod 9, got {h}"
        )));
    }
    Ok(())
}

/// Sum of the `b = 0` and `b = 1` re-indexed summands with its valuation,
/// for `h = 3, 5 (mod 9)`.
pub fn combined_term(h: u64) -> Result<(BigRat, PadicVal)> {
    check_special(h)?;
    let s = case_rewrite(h)?;
    let v = sum_exact(&s[..2.min(s.len())]);
    let val = padic_valuation(&v, 3)?;
    Ok((v, val))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseProfile {
    pub h: u64,
    pub tag: CaseTag,
    pub k: u64,
    /// `v_3(k-1)` for `h = 3k`, `v_3(2k+1)` for `h = 3k+2`.
    pub f: Option<i64>,
    pub summands: Vec<Summand>,
    /// Value and valuation of the `b in {0, 1}` block in the special classes.
    pub combined: Option<(BigRat, PadicVal)>,
    /// Valuation of the designated leading term(s).
    pub leading_valuation: PadicVal,
    /// All other summands have strictly larger valuation.
    pub dominance: bool,
    /// The explicit thresholds stated for the case (`<= -k`, `> -k`,
    /// `= f - k`, `> f - k`) hold.
    pub bounds_hold: bool,
    pub sum: BigRat,
    pub sum_valuation: PadicVal,
}

impl CaseProfile {
    /// Valuation of `S(h)` implied by the dominance pattern.
    pub fn predicted_valuation(&self) -> Option<i64> {
        match (self.dominance, self.leading_valuation) {
            (true, PadicVal::Finite(v)) => Some(v),
            _ => None,
        }
    }
}

pub fn dominance_check(h: u64) -> Result<CaseProfile> {
    let tag = CaseTag::of(h)?;
    let k = h / 3;
    let ki = k as i64;
    let f = f_of(tag, k);
    let summands = case_rewrite(h)?;
    let (combined, leading_valuation, rest) = if tag.is_special() {
        let c = sum_exact(&summands[..2.min(summands.len())]);
        let v = padic_valuation(&c, 3)?;
        (Some((c, v)), v, &summands[2.min(summands.len())..])
    } else {
        (None, PadicVal::Finite(summands[0].valuation), &summands[1..])
    };
    let dominance = match leading_valuation {
        PadicVal::Finite(lv) => rest.iter().all(|s| s.valuation > lv),
        PadicVal::Infinity => false,
    };
    let lv = match leading_valuation {
        PadicVal::Finite(v) => v,
        PadicVal::Infinity => i64::MAX,
    };
    let fv = f.unwrap_or(0);
    let bounds_hold = match tag {
        CaseTag::Case1 => lv <= -ki && rest.iter().all(|s| s.valuation > -ki),
        CaseTag::Case2 | CaseTag::Case3 => lv == -ki && rest.iter().all(|s| s.valuation > -ki),
        CaseTag::Case1Special | CaseTag::Case3Special => {
            lv == fv - ki && rest.iter().all(|s| s.valuation > fv - ki)
        }
    };
    let sum = sum_exact(&summands);
    let sum_valuation = padic_valuation(&sum, 3)?;
    Ok(CaseProfile {
        h,
        tag,
        k,
        f,
        summands,
        combined,
        leading_valuation,
        dominance,
        bounds_hold,
        sum,
        sum_valuation,
    })
}

/// `s` with `3^(s-1) <= x < 3^s`, `x >= 1`.
fn digit_length(x: u64) -> i64 {
    let (mut s, mut p) = (0, 1u64);
    while p <= x {
        p *= 3;
        s += 1;
    }
    s
}

fn chi(c: bool) -> i64 {
    i64::from(c)
}

/// Lower bound on the carries of `3b + (2k - 2b)` for `h = 3k`, `k = 1 mod 3`.
pub fn carry_lower_bound_case1(k: u64, b: u64) -> i64 {
    let e = v3_u64(2 * k + b);
    let s = digit_length(3 * b);
    let f = v3_u64(k - 1);
    e + chi(f >= e) * 0.max(f - s + chi(s != e + 1))
}

/// Lower bound on the carries of `(3b + 2) + (2k - 2b)` for `h = 3k + 2`.
pub fn carry_lower_bound_case3(k: u64, b: u64) -> i64 {
    let e = v3_u64(2 * k + b + 2);
    let s = digit_length(3 * b + 3);
    let f = v3_u64(2 * k + 1);
    e + chi(f >= e) * (chi(e > 0) + 0.max(f - s + 1))
}

fn carries(m: u64, n: u64) -> i64 {
    carries_base_p(&BigInt::from(m), &BigInt::from(n), 3).expect("3 is prime") as i64
}

/// A summand whose actual carry count is below the stated lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarryShortfall {
    pub b: u64,
    pub e: i64,
    pub s: i64,
    pub f: i64,
    pub carries: i64,
    pub bound: i64,
}

/// Compares actual carry counts with the lower bounds used in the case
/// analysis: for `h = 3k`, `k = 1 mod 3`, every `b >= 2` with
/// `v_3(2k+b) > 0`; for `h = 3k + 2`, every `b >= 1`.
pub fn carry_shortfalls(h: u64) -> Result<Vec<CarryShortfall>> {
    let tag = CaseTag::of(h)?;
    let k = h / 3;
    let out = match tag {
        CaseTag::Case1Special => (2..=k)
            .filter(|&b| v3_u64(2 * k + b) > 0)
            .map(|b| CarryShortfall {
                b,
                e: v3_u64(2 * k + b),
                s: digit_length(3 * b),
                f: v3_u64(k - 1),
                carries: carries(3 * b, 2 * k - 2 * b),
                bound: carry_lower_bound_case1(k, b),
            })
            .filter(|c| c.carries < c.bound)
            .collect(),
        CaseTag::Case3 | CaseTag::Case3Special => (1..=k)
            .map(|b| CarryShortfall {
                b,
                e: v3_u64(2 * k + b + 2),
                s: digit_length(3 * b + 3),
                f: v3_u64(2 * k + 1),
                carries: carries(3 * b + 2, 2 * k - 2 * b),
                bound: carry_lower_bound_case3(k, b),
            })
            .filter(|c| c.carries < c.bound)
            .collect(),
        _ => {
            return Err(Error::Precondition(format!(
                "no carry bound is used for h = {h} ({tag})"
            )))
        }
    };
    Ok(out)
}

pub fn carry_bound_check(h: u64) -> Result<bool> {
    Ok(carry_shortfalls(h)?.is_empty())
}

/// Checks the Kummer form of the summand valuations,
/// `v = (b - k) - v_3(top) + carries(bottom, top - bottom)`, against the
/// exact valuations.
pub fn kummer_identity_check(h: u64) -> Result<bool> {
    let k = h / 3;
    Ok(case_rewrite(h)?.iter().all(|s| {
        let predicted = s.b as i64 - k as i64 - v3_u64(s.top) + carries(s.bottom, s.top - s.bottom);
        predicted == s.valuation
    }))
}

/// One line of the nonvanishing scan.
#[derive(Clone, Debug, PartialEq)]
pub struct NonvanishingRow {
    pub h: u64,
    pub tag: CaseTag,
    pub k: u64,
    pub f: Option<i64>,
    pub nonzero: bool,
    pub sum_valuation: Option<i64>,
    pub leading_valuation: Option<i64>,
    pub dominance: bool,
    pub bounds_hold: bool,
    /// Re-indexed sum equals the original sum.
    pub rewrite_ok: bool,
    /// Dominance implies `v_3(S(h))` equals the leading valuation.
    pub ultrametric_ok: bool,
    /// `None` outside `h = 3, 5 (mod 9)`.
    pub closed_form_ok: Option<bool>,
    /// `None` where no carry bound is used.
    pub carry_ok: Option<bool>,
    pub carry_shortfalls: Vec<CarryShortfall>,
    pub kummer_ok: bool,
}

impl NonvanishingRow {
    pub fn passed(&self) -> bool {
        self.nonzero
            && self.dominance
            && self.bounds_hold
            && self.rewrite_ok
            && self.ultrametric_ok
            && self.closed_form_ok != Some(false)
            && self.carry_ok != Some(false)
            && self.kummer_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonvanishingReport {
    pub h_max: u64,
    pub rows: Vec<NonvanishingRow>,
    /// `h != 3` with `S(h) = 0`; a hard failure.
    pub zeros: Vec<u64>,
    /// Dominance or a stated bound fails while `S(h) != 0`.
    pub anomalies: Vec<u64>,
    /// Some summand has fewer carries than the stated lower bound.
    pub carry_failures: Vec<u64>,
    /// Rewrite, closed form, ultrametric or Kummer check failed.
    pub check_failures: Vec<u64>,
}

impl NonvanishingReport {
    pub fn passed(&self) -> bool {
        self.zeros.is_empty()
            && self.anomalies.is_empty()
            && self.carry_failures.is_empty()
            && self.check_failures.is_empty()
    }

    pub fn carry_shortfall_count(&self) -> usize {
        self.rows.iter().map(|r| r.carry_shortfalls.len()).sum()
    }

    /// Largest `bound - carries` over all reported shortfalls.
    pub fn max_carry_shortfall(&self) -> i64 {
        self.rows
            .iter()
            .flat_map(|r| r.carry_shortfalls.iter())
            .map(|c| c.bound - c.carries)
            .max()
            .unwrap_or(0)
    }
}

fn finite(v: PadicVal) -> Option<i64> {
    match v {
        PadicVal::Finite(x) => Some(x),
        PadicVal::Infinity => None,
    }
}

pub fn nonvanishing_row(h: u64) -> Result<NonvanishingRow> {
    let original = sum_a1(h)?;
    let p = dominance_check(h)?;
    let closed_form_ok = match h % 9 {
        3 | 5 => {
            let (c, v) = p.combined.clone().expect("special class");
            let f = p.f.expect("special class");
            Some(c == combined_closed_form(h)? && v == PadicVal::Finite(f - p.k as i64))
        }
        _ => None,
    };
    let (carry_ok, carry_shortfalls) = match p.tag {
        CaseTag::Case1Special | CaseTag::Case3 | CaseTag::Case3Special => {
            let c = carry_shortfalls(h)?;
            (Some(c.is_empty()), c)
        }
        _ => (None, Vec::new()),
    };
    let ultrametric_ok = match p.predicted_valuation() {
        Some(v) => p.sum_valuation == PadicVal::Finite(v),
        None => true,
    };
    Ok(NonvanishingRow {
        h,
        tag: p.tag,
        k: p.k,
        f: p.f,
        nonzero: !original.is_zero(),
        sum_valuation: finite(p.sum_valuation),
        leading_valuation: finite(p.leading_valuation),
        dominance: p.dominance,
        bounds_hold: p.bounds_hold,
        rewrite_ok: p.sum == original,
        ultrametric_ok,
        closed_form_ok,
        carry_ok,
        carry_shortfalls,
        kummer_ok: kummer_identity_check(h)?,
    })
}

/// Runs every check for `4 <= h <= h_max` in parallel; rows are in order.
pub fn verify_nonvanishing(h_max: u64) -> Result<NonvanishingReport> {
    if h_max < 4 {
        return Err(Error::Precondition("verify_nonvanishing needs h_max >= 4".into()));
    }
    let rows = (4..=h_max)
        .into_par_iter()
        .map(nonvanishing_row)
        .collect::<Result<Vec<_>>>()?;
    let mut report = NonvanishingReport {
        h_max,
        rows: Vec::new(),
        zeros: Vec::new(),
        anomalies: Vec::new(),
        carry_failures: Vec::new(),
        check_failures: Vec::new(),
    };
    for r in &rows {
        if !r.nonzero {
            report.zeros.push(r.h);
        } else if !r.dominance || !r.bounds_hold {
            report.anomalies.push(r.h);
        }
        if r.carry_ok == Some(false) {
            report.carry_failures.push(r.h);
        }
        if !(r.rewrite_ok && r.ultrametric_ok && r.kummer_ok && r.closed_form_ok != Some(false)) {
            report.check_failures.push(r.h);
        }
    }
    report.rows = rows;
    Ok(report)
}

/// Sign of `S(h)`: useful for quick inspection of the scan.
pub fn sum_sign(h: u64) -> Result<i8> {
    let s = sum_a1(h)?;
    Ok(if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial, binomial_i, int};
    use crate::symfunc::a_coefficient;

    /// Direct term-by-term evaluation with rational additions.
    fn naive_sum(h: u64) -> BigRat {
        let h = h as i64;
        (0..=h / 3)
            .map(|b| {
                let sign = if (h - b) % 2 == 0 { 1 } else { -1 };
                BigRat::new(binomial_i(h - b, 2 * b) * sign, BigInt::from(h - b))
                    * rat_pow(&rat(2, 3), b)
            })
            .fold(BigRat::zero(), |a, t| a + t)
    }

    #[test]
    fn sum_examples() {
        assert!(sum_a1(3).unwrap().is_zero());
        assert_eq!(sum_a1(1).unwrap(), int(-1));
        assert_eq!(sum_a1(4).unwrap(), rat(-5, 12));
        assert!(sum_a1(0).is_err());
        assert_eq!(sum_sign(3).unwrap(), 0);
    }

    #[test]
    fn sum_matches_naive() {
        for h in 1..=80 {
            assert_eq!(sum_a1(h).unwrap(), naive_sum(h), "h={h}");
        }
    }

    #[test]
    fn binomial_path_matches_direct() {
        for h in 4..=60u64 {
            for s in case_rewrite(h).unwrap().iter().chain(sum_a1_summands(h).unwrap().iter()) {
                assert_eq!(
                    s.binomial,
                    binomial(&BigInt::from(s.top), &BigInt::from(s.bottom)),
                    "h={h} b={}",
                    s.b
                );
                assert_eq!(padic_valuation(&s.value(), 3).unwrap(), PadicVal::Finite(s.valuation));
            }
        }
    }

    #[test]
    fn rewrite_small() {
        for h in [6, 7, 8] {
            let r = case_rewrite(h).unwrap();
            assert_eq!(r.len(), 3);
            let total = r.iter().fold(BigRat::zero(), |a, s| a + s.value());
            assert_eq!(total, naive_sum(h), "h={h}");
        }
        assert!(case_rewrite(3).is_err());
    }

    #[test]
    fn case_tags() {
        assert_eq!(CaseTag::of(6).unwrap(), CaseTag::Case1);
        assert_eq!(CaseTag::of(12).unwrap(), CaseTag::Case1Special);
        assert_eq!(CaseTag::of(7).unwrap(), CaseTag::Case2);
        assert_eq!(CaseTag::of(8).unwrap(), CaseTag::Case3);
        assert_eq!(CaseTag::of(5).unwrap(), CaseTag::Case3Special);
        assert_eq!(CaseTag::of(14).unwrap(), CaseTag::Case3Special);
        for h in 4..300 {
            let t = CaseTag::of(h).unwrap();
            assert_eq!(t.is_special(), h % 9 == 3 || h % 9 == 5, "h={h}");
        }
    }

    #[test]
    fn combined_h12() {
        let (v, val) = combined_term(12).unwrap();
        // -(2^3/3^4) * 3 * 37 / 4
        assert_eq!(v, rat(-74, 27));
        assert_eq!(v, -rat(8, 81) * rat(3 * 37, 4));
        assert_eq!(val, PadicVal::Finite(-3));
        assert_eq!(combined_closed_form(12).unwrap(), v);
    }

    #[test]
    fn combined_h21_h14_h5() {
        let (v, val) = combined_term(21).unwrap();
        assert_eq!(v, combined_closed_form(21).unwrap());
        assert_eq!(val, PadicVal::Finite(-6));
        let (v, val) = combined_term(14).unwrap();
        assert_eq!(v, combined_closed_form(14).unwrap());
        assert_eq!(val, PadicVal::Finite(-2));
        let (v, _) = combined_term(5).unwrap();
        assert_eq!(v, rat(4, 5));
        assert_eq!(v, sum_a1(5).unwrap());
        for h in [4, 6, 7, 13, 3] {
            assert!(combined_term(h).is_err(), "h={h}");
        }
    }

    #[test]
    fn dominance_examples() {
        let p = dominance_check(6).unwrap();
        assert_eq!(p.summands.len(), 3);
        assert!(p.dominance && p.bounds_hold);
        assert!(p.summands[0].valuation <= -2);
        assert_eq!(p.predicted_valuation(), Some(p.summands[0].valuation));

        let p = dominance_check(12).unwrap();
        assert_eq!(p.f, Some(1));
        assert!(p.summands[2..].iter().all(|s| s.valuation > -3));
        assert!(p.dominance && p.bounds_hold);

        let p = dominance_check(5).unwrap();
        assert_eq!(p.tag, CaseTag::Case3Special);
        assert!(p.dominance);
        assert_eq!(p.combined.as_ref().unwrap().0, sum_a1(5).unwrap());
    }

    #[test]
    fn carry_examples() {
        assert!(carry_bound_check(14).unwrap());
        assert!(carry_bound_check(17).unwrap());
        // at b = k the addition is 3k + 0, which has no carries at all
        let c = carry_shortfalls(12).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].b, c[0].e, c[0].carries, c[0].bound), (4, 1, 0, 1));
        // 12 + 6 = 18 is 110 + 20 = 200 in base 3: one carry, e = 2
        let c = carry_shortfalls(21).unwrap();
        assert!(c.iter().any(|x| (x.b, x.e, x.carries, x.bound) == (4, 2, 1, 2)));
        assert!(!carry_bound_check(12).unwrap());
        assert!(carry_bound_check(6).is_err());
        assert!(carry_bound_check(7).is_err());
        // e = 0 collapses the Case 1 bound to the max term: k = 4, b = 3
        assert_eq!(v3_u64(2 * 4 + 3), 0);
        let f = v3_u64(4 - 1);
        let s = digit_length(9);
        assert_eq!(carry_lower_bound_case1(4, 3), 0.max(f - s + 1));
    }

    #[test]
    fn digit_length_brackets() {
        for x in 1..2000u64 {
            let s = digit_length(x) as u32;
            assert!(3u64.pow(s - 1) <= x && x < 3u64.pow(s), "x={x}");
        }
    }

    #[test]
    fn scan_to_200() {
        let r = verify_nonvanishing(200).unwrap();
        assert_eq!(r.rows.len(), 197);
        assert!(r.zeros.is_empty() && r.anomalies.is_empty() && r.check_failures.is_empty());
        // the stated carry bound for h = 3k, k = 1 mod 3 overshoots by exactly one
        assert!(r.rows.iter().all(|x| x.carry_ok != Some(false) || x.tag == CaseTag::Case1Special));
        assert_eq!(r.max_carry_shortfall(), 1);
        assert!(!r.passed());
        assert!(verify_nonvanishing(3).is_err());
    }

    #[test]
    fn links_to_a_coefficients() {
        for h in 1..=100u64 {
            let a = a_coefficient(2 * h).unwrap();
            assert_eq!(a, sum_a1(h).unwrap() * int(2 * h as i64), "h={h}");
        }
        for h in 4..=150u64 {
            let p = dominance_check(h).unwrap();
            let want = p.predicted_valuation().unwrap() + v3_u64(2 * h);
            assert_eq!(
                padic_valuation(&a_coefficient(2 * h).unwrap(), 3).unwrap(),
                PadicVal::Finite(want),
                "h={h}"
            );
        }
    }
}
