use num_traits::{Signed, Zero};

use crate::arith::{binomial_path, int, rat, BigInt, BigRat};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Coefficients of the closed-form sum defining `f_m`, before the `±m`
/// prefactor: `(-1)^(h-b) / (h-b) * C(h-b, 2b + [m odd])` for
/// `b = 0..=floor(h/3)`, `h = floor(m/2)`.
fn closed_form_terms(m: u64) -> Result<Vec<BigRat>> {
    if m < 2 {
        return Err(Error::Precondition(format!("a_m and f_m need m >= 2, got {m}")));
    }
    let h = m / 2;
    let odd = m % 2;
    let pairs: Vec<(u64, u64)> = (0..=h / 3)
        .map(|b| (h - b, (2 * b + odd).min(h - b)))
        .collect();
    Ok(binomial_path(&pairs)
        .into_iter()
        .enumerate()
        .map(|(b, c)| {
            let b = b as u64;
            // C(h-b, 2b+1) vanishes when 2b+1 > h-b
            let c = if 2 * b + odd > h - b { BigInt::zero() } else { c };
            let c = if (h - b).is_multiple_of(2) { c } else { -c };
            BigRat::new(c, BigInt::from(h - b))
        })
        .collect())
}

/// `f_m(x) = +m sum ... x^b` for even `m`, `-m sum ... x^b` for odd `m`.
/// The coefficients are integers for every `m >= 2`.
pub fn f_polynomial(m: u64) -> Result<UniPoly> {
    let prefactor = if m.is_multiple_of(2) { int(m as i64) } else { int(-(m as i64)) };
    let terms = closed_form_terms(m)?;
    Ok(UniPoly::from_coeffs(terms.into_iter().map(|t| t * &prefactor).collect()))
}

/// `a_m = f_m(2/3)`.
pub fn a_coefficient(m: u64) -> Result<BigRat> {
    Ok(f_polynomial(m)?.eval(&rat(2, 3)))
}

/// Integer form of the recurrence `c_d = c_{d-1} - c_{d-2}/2 + c_{d-3}/6`,
/// `c_1 = 1`, `c_2 = c_3 = 0`: with `N_d = 6^d c_d`,
/// `N_d = 6 N_{d-1} - 18 N_{d-2} + 36 N_{d-3}`.
#[derive(Clone, Debug)]
pub struct CRecurrence {
    d: u64,
    window: [BigInt; 3],
}

impl Default for CRecurrence {
    fn default() -> Self {
        Self::new()
    }
}

impl CRecurrence {
    pub fn new() -> Self {
        CRecurrence {
            d: 0,
            window: [BigInt::zero(), BigInt::zero(), BigInt::zero()],
        }
    }
}

impl Iterator for CRecurrence {
    /// `(d, N_d)`; `c_d = N_d / 6^d`.
    type Item = (u64, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        self.d += 1;
        let next = match self.d {
            1 => BigInt::from(6),
            2 | 3 => BigInt::zero(),
            _ => {
                let [a, b, c] = &self.window;
                c * 6 - b * 18 + a * 36
            }
        };
        self.window = [
            self.window[1].clone(),
            self.window[2].clone(),
            next.clone(),
        ];
        Some((self.d, next))
    }
}

pub fn c_coefficient(d: u64) -> Result<BigRat> {
    if d < 1 {
        return Err(Error::Precondition("c_d needs d >= 1".into()));
    }
    let (_, n) = CRecurrence::new().nth(d as usize - 1).expect("infinite");
    Ok(BigRat::new(n, num_traits::pow(BigInt::from(6), d as usize)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CGrowthReport {
    /// Real root of `x^3 - x^2 + x/2 - 1/6` in `(0, 1)`.
    pub alpha: f64,
    /// Modulus of the complex pair.
    pub beta_abs: f64,
    /// `(alpha / |beta|)^4`.
    pub ratio4: f64,
    /// `alpha^d > 2 |beta|^d` for every `4 <= d <= d_max`.
    pub dominance_holds: bool,
    /// `c_d > 0` exactly for every `4 <= d <= d_max`.
    pub exact_positive: bool,
    pub first_nonpositive: Option<u64>,
    pub c2_zero: bool,
    pub c3_zero: bool,
}

const ROOT_TOLERANCE: f64 = 1e-9;

fn cubic(x: f64) -> f64 {
    ((x - 1.0) * x + 0.5) * x - 1.0 / 6.0
}

/// Numerically isolate the roots of the characteristic cubic and check the
/// growth comparison; positivity of `c_d` is re-derived exactly from the
/// recurrence and does not rely on the floating-point part.
pub fn c_growth_check(d_max: u64) -> Result<CGrowthReport> {
    if d_max < 4 {
        return Err(Error::Precondition("c_growth_check needs d_max >= 4".into()));
    }
    // the cubic is strictly increasing (discriminant of its derivative < 0)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > ROOT_TOLERANCE * 1e-3 {
        let mid = 0.5 * (lo + hi);
        if cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = 0.5 * (lo + hi);
    // product of the roots is 1/6, so alpha |beta|^2 = 1/6
    let beta_abs = (1.0 / (6.0 * alpha)).sqrt();
    let ratio4 = (alpha / beta_abs).powi(4);
    let log_ratio = (alpha / beta_abs).ln();
    let dominance_holds = (4..=d_max).all(|d| d as f64 * log_ratio > 2f64.ln());

    let mut first_nonpositive = None;
    let mut c2_zero = false;
    let mut c3_zero = false;
    for (d, n) in CRecurrence::new().take(d_max as usize) {
        match d {
            2 => c2_zero = n.is_zero(),
            3 => c3_zero = n.is_zero(),
            d if d >= 4 && !n.is_positive() && first_nonpositive.is_none() => {
                first_nonpositive = Some(d)
            }
            _ => {}
        }
    }
    Ok(CGrowthReport {
        alpha,
        beta_abs,
        ratio4,
        dominance_holds,
        exact_positive: first_nonpositive.is_none(),
        first_nonpositive,
        c2_zero,
        c3_zero,
    })
}

impl CGrowthReport {
    /// `c_d = alpha^d + 2 Re(beta^d)`, so `|c_d - alpha^d| <= 2 |beta|^d`.
    pub fn numeric_c(&self, d: u64) -> (f64, f64) {
        (self.alpha.powi(d as i32), 2.0 * self.beta_abs.powi(d as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_integer;

    #[test]
    fn a_examples() {
        assert_eq!(a_coefficient(2).unwrap(), int(-2));
        assert_eq!(a_coefficient(3).unwrap(), int(3));
        assert_eq!(a_coefficient(5).unwrap(), int(-5));
        assert_eq!(a_coefficient(8).unwrap(), rat(-10, 3));
        assert!(a_coefficient(6).unwrap().is_zero());
        assert!(a_coefficient(1).is_err());
    }

    #[test]
    fn terms_match_direct_binomials() {
        use crate::arith::binomial_i;
        for m in 2..=90u64 {
            let (h, odd) = ((m / 2) as i64, (m % 2) as i64);
            let direct: Vec<BigRat> = (0..=h / 3)
                .map(|b| {
                    let sign = if (h - b) % 2 == 0 { 1 } else { -1 };
                    BigRat::new(binomial_i(h - b, 2 * b + odd) * sign, BigInt::from(h - b))
                })
                .collect();
            assert_eq!(closed_form_terms(m).unwrap(), direct, "m={m}");
        }
    }

    #[test]
    fn f8_is_linear() {
        assert_eq!(f_polynomial(8).unwrap(), UniPoly::from_ints(&[2, -8]));
    }

    #[test]
    fn f_small_degrees() {
        for m in [2, 3, 4, 5, 7] {
            assert_eq!(f_polynomial(m).unwrap().degree(), Some(0), "m={m}");
        }
        assert_eq!(f_polynomial(6).unwrap(), UniPoly::from_ints(&[-2, 3]));
    }

    #[test]
    fn f_integral_up_to_200() {
        for m in 2..=200 {
            let f = f_polynomial(m).unwrap();
            assert!(f.coeffs().iter().all(is_integer), "m={m}");
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_coefficient(1).unwrap(), int(1));
        assert_eq!(c_coefficient(2).unwrap(), int(0));
        assert_eq!(c_coefficient(3).unwrap(), int(0));
        assert_eq!(c_coefficient(4).unwrap(), rat(1, 6));
        assert_eq!(c_coefficient(5).unwrap(), rat(1, 6));
        assert_eq!(c_coefficient(6).unwrap(), rat(1, 12));
    }

    #[test]
    fn c_matches_rational_recurrence() {
        let mut c = vec![int(0), int(1), int(0), int(0)];
        for d in 4..=40 {
            let next = &c[d - 1] - &c[d - 2] * rat(1, 2) + &c[d - 3] * rat(1, 6);
            c.push(next);
        }
        for d in 1..=40u64 {
            assert_eq!(c_coefficient(d).unwrap(), c[d as usize], "d={d}");
        }
    }

    #[test]
    fn growth_check_small() {
        let r = c_growth_check(10).unwrap();
        assert!((2.16..=2.18).contains(&r.ratio4), "{}", r.ratio4);
        assert!(r.alpha > 0.0 && r.alpha < 1.0);
        assert!(cubic(r.alpha).abs() < ROOT_TOLERANCE);
        assert!(r.dominance_holds && r.exact_positive && r.c2_zero && r.c3_zero);
        for d in 4..=10 {
            let exact = c_coefficient(d).unwrap();
            let approx = exact.numer().to_string().parse::<f64>().unwrap()
                / exact.denom().to_string().parse::<f64>().unwrap();
            let (main, err) = r.numeric_c(d);
            assert!((approx - main).abs() <= err + 1e-12, "d={d}");
        }
        assert!(c_growth_check(3).is_err());
    }
}
