//! Explicit common zeros with coordinates in a cyclotomic field.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::{DegreeSet, Family};
use crate::error::{Error, Result};
use crate::poly::{CyclotomicElt, CyclotomicField};

/// A point whose coordinates are `0` or roots of unity; a root `exp(2 pi i t)`
/// is stored as its angle `t` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoint(Vec<Option<Ratio<i64>>>);

fn angle(t: Ratio<i64>) -> Ratio<i64> {
    t - t.floor()
}

impl RootPoint {
    pub fn new(coords: Vec<Option<Ratio<i64>>>) -> Self {
        RootPoint(coords.into_iter().map(|c| c.map(angle)).collect())
    }

    /// `(1, 0, ..., 0)` of length `n`.
    pub fn unit(n: usize) -> Self {
        let mut v = vec![None; n];
        v[0] = Some(Ratio::zero());
        RootPoint(v)
    }

    pub fn coords(&self) -> &[Option<Ratio<i64>>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    pub fn padded(mut self, n: usize) -> Self {
        self.0.resize(n, None);
        self
    }

    /// A coordinatewise `d`-th root: if this point kills `p_a` for
    /// `a in A`, the result kills `p_{da}`.
    pub fn nth_root(&self, d: u64) -> RootPoint {
        let d = Ratio::from_integer(d as i64);
        RootPoint(self.0.iter().map(|c| c.map(|t| t / d)).collect())
    }

    fn conductor(&self) -> u64 {
        self.0
            .iter()
            .flatten()
            .fold(1i64, |acc, t| acc.lcm(t.denom())) as u64
    }

    pub fn to_witness(&self) -> Result<Witness> {
        let field = CyclotomicField::new(self.conductor());
        let c = field.conductor() as i64;
        let coords = self
            .0
            .iter()
            .map(|t| match t {
                None => field.zero(),
                Some(t) => field.root_of_unity(t.numer() * (c / t.denom())),
            })
            .collect();
        Witness::new(coords)
    }
}

/// A nonzero point of `Q(zeta_c)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    field: Arc<CyclotomicField>,
    coords: Vec<CyclotomicElt>,
}

impl Witness {
    /// Coordinates may live in different cyclotomic fields; they are embedded
    /// into the compositum.
    pub fn new(coords: Vec<CyclotomicElt>) -> Result<Self> {
        if coords.iter().all(CyclotomicElt::is_zero) {
            return Err(Error::Precondition("a witness must be nonzero".into()));
        }
        let c = coords.iter().fold(1u64, |acc, z| acc.lcm(&z.conductor()));
        let field = CyclotomicField::new(c);
        let coords = coords
            .iter()
            .map(|z| z.embed(&field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Witness { field, coords })
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn coords(&self) -> &[CyclotomicElt] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, z) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, ") over Q(zeta_{})", self.conductor())
    }
}

/// `g_a` at `point`: power sums by repeated squaring, complete symmetric
/// polynomials by `h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j)`.
pub fn eval_generator(family: Family, a: u64, point: &[CyclotomicElt]) -> Result<CyclotomicElt> {
    let Some(first) = point.first() else {
        return Err(Error::Precondition("empty point".into()));
    };
    let field = first.field().clone();
    for z in point {
        first.check_same_field(z)?;
    }
    match family {
        Family::Power => Ok(point
            .iter()
            .fold(field.zero(), |acc, z| &acc + &z.pow(a))),
        Family::Complete => {
            let a = a as usize;
            let mut h = vec![field.zero(); a + 1];
            h[0] = field.one();
            for z in point {
                for k in 1..=a {
                    let t = z * &h[k - 1];
                    h[k] = &h[k] + &t;
                }
            }
            Ok(h.swap_remove(a))
        }
    }
}

/// Every generator of `set` vanishes at `w`.
pub fn witness_verify(w: &Witness, set: &DegreeSet) -> Result<bool> {
    if w.arity() != set.n() {
        return Err(Error::ArityMismatch {
            left: w.arity(),
            right: set.n(),
        });
    }
    for &a in set.degrees() {
        if !eval_generator(set.family(), a, w.coords())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search for a nonzero common zero of `p_b(q)`, `b in degrees`, among
/// root-of-unity points. Uses the antipodal pair `(1, zeta_{2g})` when all
/// `b / g` are odd, and otherwise the block construction: concatenated
/// `y_i (1, u, ..., u^(c-1))` kill every `p_b` with `c` not dividing `b`,
/// leaving a smaller system for `y`.
pub fn power_zero(degrees: &[u64], q: usize) -> Option<RootPoint> {
    if q == 0 {
        return None;
    }
    if degrees.is_empty() {
        return Some(RootPoint::unit(q));
    }
    let g = degrees.iter().fold(0u64, |acc, &b| acc.gcd(&b));
    if q >= 2 && degrees.iter().all(|b| (b / g) % 2 == 1) {
        let mut v = vec![None; q];
        v[0] = Some(Ratio::zero());
        v[1] = Some(Ratio::new(1, 2 * g as i64));
        return Some(RootPoint(v));
    }
    for c in 2..=q {
        let qq = q / c;
        let divisible: Vec<u64> = degrees.iter().copied().filter(|b| b % c as u64 == 0).collect();
        if divisible.len() < qq {
            if let Some(y) = power_zero(&divisible, qq) {
                return Some(blocks(c, &y, q));
            }
        }
    }
    None
}

/// Concatenate `y_i (1, u, ..., u^(c-1))` with `u = zeta_c`, padded with zeros
/// to length `n`.
pub fn blocks(c: usize, y: &RootPoint, n: usize) -> RootPoint {
    let mut v = Vec::with_capacity(n);
    for yi in y.coords() {
        for j in 0..c {
            v.push(yi.map(|t| t + Ratio::new(j as i64, c as i64)));
        }
    }
    RootPoint::new(v).padded(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(family: Family, degrees: &[u64]) -> DegreeSet {
        DegreeSet::from_degrees(family, degrees.to_vec()).unwrap()
    }

    #[test]
    fn antipodal_pair() {
        let w = RootPoint::new(vec![Some(Ratio::zero()), Some(Ratio::new(1, 2))])
            .to_witness()
            .unwrap();
        assert!(witness_verify(&w, &set(Family::Power, &[3, 5])).unwrap());
        assert!(!witness_verify(&w, &set(Family::Power, &[2, 5])).unwrap());
    }

    #[test]
    fn cube_root_block() {
        let w = blocks(3, &RootPoint::unit(1), 4).to_witness().unwrap();
        assert_eq!(w.conductor(), 3);
        assert!(witness_verify(&w, &set(Family::Power, &[1, 2, 4, 5])).unwrap());
        assert!(!witness_verify(&w, &set(Family::Power, &[1, 2, 3, 5])).unwrap());
    }

    #[test]
    fn complete_root() {
        // (x, 1) with x = -1 kills h_1 and h_3
        let w = RootPoint::new(vec![Some(Ratio::new(1, 2)), Some(Ratio::zero())])
            .to_witness()
            .unwrap();
        assert!(witness_verify(&w, &set(Family::Complete, &[1, 3])).unwrap());
    }

    #[test]
    fn mixed_fields_are_embedded() {
        let k3 = CyclotomicField::new(3);
        let k4 = CyclotomicField::new(4);
        let w = Witness::new(vec![k3.generator(), k4.generator()]).unwrap();
        assert_eq!(w.conductor(), 12);
        assert!(Witness::new(vec![k3.zero()]).is_err());
    }

    #[test]
    fn arity_checked() {
        let w = RootPoint::unit(2).to_witness().unwrap();
        assert!(witness_verify(&w, &set(Family::Power, &[1, 2, 3])).is_err());
    }

    #[test]
    fn power_zero_examples() {
        for (degrees, q) in [
            (vec![1u64, 3, 5, 7], 4usize),
            (vec![1, 3, 4], 4),
            (vec![2, 6], 3),
            (vec![1, 2, 4, 5, 7], 6),
        ] {
            let pt = power_zero(&degrees, q).expect("zero exists");
            let w = pt.to_witness().unwrap();
            for &b in &degrees {
                assert!(eval_generator(Family::Power, b, w.coords()).unwrap().is_zero());
            }
        }
        // p_1, p_2 in two variables only vanish at the origin
        assert!(power_zero(&[1, 2], 2).is_none());
    }

    #[test]
    fn roots_lift_degrees() {
        let pt = power_zero(&[1, 3], 2).unwrap().nth_root(4);
        let w = pt.to_witness().unwrap();
        assert!(witness_verify(&w, &set(Family::Power, &[4, 12])).unwrap());
    }
}
