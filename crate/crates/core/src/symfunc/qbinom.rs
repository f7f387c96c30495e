use crate::error::{Error, Result};
use crate::poly::UniPoly;

fn q_factor(k: usize) -> UniPoly {
    // 1 - q^k
    let mut c = vec![0i64; k + 1];
    c[0] = 1;
    c[k] -= 1;
    UniPoly::from_ints(&c)
}

/// The Gaussian binomial `[d+n choose n]_q`, computed as
/// `prod_{i=1}^{n} (1 - q^{d+i}) / (1 - q^i)` with exact division at each step.
pub fn gaussian_binomial(d: usize, n: usize) -> Result<UniPoly> {
    let mut acc = UniPoly::one();
    for i in 1..=n {
        let num = &acc * &q_factor(d + i);
        acc = num
            .divide_exact(&q_factor(i))?
            .ok_or(Error::NonIntegral)?;
    }
    Ok(acc)
}

/// Number of partitions of `k` into at most `n` parts, each at most `d`.
pub fn partition_count(k: usize, n: usize, d: usize) -> u64 {
    fn rec(k: usize, parts_left: usize, max_part: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        if parts_left == 0 {
            return 0;
        }
        (1..=max_part.min(k))
            .map(|p| rec(k - p, parts_left - 1, p))
            .sum()
    }
    rec(k, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigRat;

    #[test]
    fn small_example() {
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(gaussian_binomial(2, 2).unwrap(), UniPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert_eq!(gaussian_binomial(0, 3).unwrap(), UniPoly::one());
        assert_eq!(gaussian_binomial(5, 0).unwrap(), UniPoly::one());
    }

    #[test]
    fn coefficients_count_partitions() {
        for d in 0..=8 {
            for n in 0..=8 {
                let g = gaussian_binomial(d, n).unwrap();
                assert_eq!(g.degree(), Some(d * n));
                for k in 0..=d * n {
                    assert_eq!(
                        g.coeff(k),
                        BigRat::from_integer(partition_count(k, n, d).into()),
                        "d={d} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn palindromic() {
        for d in 0..=8 {
            for n in 0..=8 {
                let g = gaussian_binomial(d, n).unwrap();
                let top = d * n;
                for k in 0..=top {
                    assert_eq!(g.coeff(k), g.coeff(top - k));
                }
            }
        }
    }

    #[test]
    fn value_at_one_is_binomial() {
        let g = gaussian_binomial(4, 3).unwrap();
        assert_eq!(g.eval(&BigRat::from_integer(1.into())), BigRat::from_integer(35.into()));
    }
}
