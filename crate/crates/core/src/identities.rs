//! Exact checks of the coefficient identity for `P(x) = (2 + 2x - 4x^3)^n`:
//! a triple-binomial single sum, a double sum, and the coefficient read off
//! the expanded polynomial must all coincide.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::{binom_exact, binom_gen};

fn signed_pow(base: i64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `2^n sum_{k=0}^{floor(m/3)} (-2)^k C(n, m-3k) C(3k-m+n, k)`.
///
/// The upper index `3k-m+n` may be negative; it is read through the
/// falling-factorial extension.
pub fn lemma21_lhs(m: u64, n: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for k in 0..=m / 3 {
        let a = binom_exact(n, (m - 3 * k) as i64);
        if a.is_zero() {
            continue;
        }
        let upper = 3 * k as i64 - m as i64 + n as i64;
        sum += signed_pow(-2, k) * a * binom_gen(upper, k as i64);
    }
    signed_pow(2, n) * sum
}

/// `(-1)^m sum_{j=0}^{n} C(n, j) sum_{k=0}^{m} (-2)^k C(n, m-k) C(2j, k)`.
pub fn lemma21_rhs(m: u64, n: u64) -> BigInt {
    let mut outer = BigInt::zero();
    for j in 0..=n {
        let mut inner = BigInt::zero();
        for k in 0..=m.min(2 * j) {
            let a = binom_exact(n, (m - k) as i64);
            if a.is_zero() {
                continue;
            }
            inner += signed_pow(-2, k) * a * binom_exact(2 * j, k as i64);
        }
        outer += binom_exact(n, j as i64) * inner;
    }
    if m % 2 == 1 {
        -outer
    } else {
        outer
    }
}

/// `[x^m] (2 + 2x - 4x^3)^n` by dense repeated multiplication.
pub fn poly_coeff(m: u64, n: u64) -> BigInt {
    poly_power(n).into_iter().nth(m as usize).unwrap_or_default()
}

/// Dense coefficients of `(2 + 2x - 4x^3)^n`, length `3n + 1`.
pub fn poly_power(n: u64) -> Vec<BigInt> {
    let base = [2i64, 2, 0, -4];
    let mut acc = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); acc.len() + 3];
        for (i, c) in acc.iter().enumerate() {
            for (j, &b) in base.iter().enumerate() {
                if b != 0 {
                    next[i + j] += c * b;
                }
            }
        }
        acc = next;
    }
    acc
}

/// The three evaluations at one `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityInstance {
    pub m: u64,
    pub n: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub oracle: BigInt,
}

impl IdentityInstance {
    pub fn evaluate(m: u64, n: u64) -> Self {
        Self {
            m,
            n,
            lhs: lemma21_lhs(m, n),
            rhs: lemma21_rhs(m, n),
            oracle: poly_coeff(m, n),
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.rhs == self.oracle
    }
}

/// Every instance with `n <= max_n` and `m <= 3n + extra_m`, expanding each
/// polynomial power once.
pub fn verify_box(max_n: u64, extra_m: u64) -> Vec<IdentityInstance> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let coeffs = poly_power(n);
        for m in 0..=3 * n + extra_m {
            out.push(IdentityInstance {
                m,
                n,
                lhs: lemma21_lhs(m, n),
                rhs: lemma21_rhs(m, n),
                oracle: coeffs.get(m as usize).cloned().unwrap_or_default(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_examples() {
        assert_eq!(lemma21_lhs(0, 0), BigInt::one());
        assert_eq!(lemma21_lhs(1, 1), BigInt::from(2));
        assert_eq!(lemma21_lhs(3, 1), BigInt::from(-4));
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(lemma21_rhs(0, 0), BigInt::one());
        assert_eq!(lemma21_rhs(1, 1), BigInt::from(2));
        assert_eq!(lemma21_rhs(3, 1), BigInt::from(-4));
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(poly_coeff(0, 1), BigInt::from(2));
        assert_eq!(poly_coeff(3, 1), BigInt::from(-4));
        assert_eq!(poly_coeff(0, 0), BigInt::one());
        assert_eq!(poly_coeff(2, 1), BigInt::zero());
        assert_eq!(poly_coeff(4, 1), BigInt::zero());
    }

    #[test]
    fn evaluations_at_one_and_minus_one() {
        for n in 0..=25u64 {
            let c = poly_power(n);
            let at_one: BigInt = c.iter().sum();
            let at_minus_one: BigInt = c
                .iter()
                .enumerate()
                .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
                .sum();
            assert_eq!(at_one, if n == 0 { BigInt::one() } else { BigInt::zero() });
            assert_eq!(at_minus_one, num_traits::pow(BigInt::from(4), n as usize));
        }
    }

    #[test]
    fn small_box_holds() {
        for inst in verify_box(8, 2) {
            assert!(inst.holds(), "{inst:?}");
        }
        let forced = IdentityInstance::evaluate(3 * 4 + 2, 4);
        assert!(forced.holds() && forced.oracle.is_zero());
    }
}
