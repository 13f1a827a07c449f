//! Binomial coefficients: exact, with a generalised (possibly negative) upper
//! index, modulo a prime via Lucas, and modulo prime powers with the p-adic
//! valuation split off.

mod stream;
mod valued;

pub use stream::{binom_stream, BinomStream};
pub(crate) use stream::{LinearFactor, PDivisor, ValuedProduct};
pub use valued::{binom_mod_valued, factorial_decomp, ValuedResidue};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::modarith::{mod_inv, mulmod, Residue};

/// Exact `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binom_exact(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    // After step i the accumulator is C(n - k + i, i), so each division is
    // exact and the intermediate never exceeds the output by more than a
    // factor of n.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C(a, k) = a(a-1)...(a-k+1)/k!` for any integer `a`; zero for `k < 0`.
pub fn binom_gen(a: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if a >= 0 {
        return binom_exact(a as u64, k);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= a as i128 - i as i128;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b) mod p` for digits `a, b < p`.
fn digit_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let (mut num, mut den) = (1 % p, 1 % p);
    for i in 0..b {
        num = mulmod(num, a - i, p);
        den = mulmod(den, i + 1, p);
    }
    if b == 0 {
        return num;
    }
    let inv = mod_inv(den as i128, p)
        .expect("digit factorial is a unit")
        .value();
    mulmod(num, inv, p)
}

/// `C(n, k) mod p` as the product of binomials of base-`p` digits.
pub fn binom_mod_lucas(n: u64, k: u64, p: u64) -> Residue {
    assert!(p >= 2, "modulus must be a prime");
    debug_assert!(crate::primes::is_prime(p), "{p} is not prime");
    Residue::from_u64(binom_mod_lucas_unchecked(n, k, p), p)
}

pub(crate) fn binom_mod_lucas_unchecked(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while k > 0 && acc != 0 {
        acc = mulmod(acc, digit_binom(n % p, k % p, p), p);
        n /= p;
        k /= p;
    }
    acc
}

/// Factorial tables mod `p` for O(log_p n) Lucas queries after O(p) setup.
#[derive(Clone, Debug)]
pub struct LucasTable {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl LucasTable {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2);
        let n = p as usize;
        let mut fact = vec![1 % p; n];
        for i in 1..n {
            fact[i] = mulmod(fact[i - 1], i as u64, p);
        }
        let mut inv_fact = vec![1 % p; n];
        inv_fact[n - 1] = mod_inv(fact[n - 1] as i128, p).unwrap().value();
        for i in (1..n).rev() {
            inv_fact[i - 1] = mulmod(inv_fact[i], i as u64, p);
        }
        Self { p, fact, inv_fact }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn binom(&self, mut n: u64, mut k: u64) -> u64 {
        let p = self.p;
        let mut acc = 1 % p;
        while k > 0 {
            let (a, b) = ((n % p) as usize, (k % p) as usize);
            if b > a {
                return 0;
            }
            acc = mulmod(acc, self.fact[a], p);
            acc = mulmod(acc, self.inv_fact[b], p);
            acc = mulmod(acc, self.inv_fact[a - b], p);
            n /= p;
            k /= p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }

    fn falling(a: i64, k: i64) -> BigInt {
        let num = (0..k).fold(BigInt::one(), |acc, i| acc * (a - i));
        num / factorial(k as u64)
    }

    #[test]
    fn exact_examples() {
        assert_eq!(binom_exact(0, 0), BigInt::one());
        assert_eq!(factorial(6) / (factorial(2) * factorial(4)), BigInt::from(15));
        assert_eq!(binom_exact(6, 2), BigInt::from(15));
        assert_eq!(binom_exact(5, 7), BigInt::zero());
        assert_eq!(binom_exact(5, -1), BigInt::zero());
        assert_eq!(binom_exact(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn generalized_examples() {
        assert_eq!(binom_gen(-1, 0), BigInt::one());
        assert_eq!(falling(-1, 2), BigInt::one());
        assert_eq!(binom_gen(-1, 2), BigInt::one());
        assert_eq!(binom_gen(5, -3), BigInt::zero());
        assert_eq!(binom_gen(-3, 3), BigInt::from(-10));
        assert_eq!(binom_gen(2, 5), BigInt::zero());
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_exact(10, 4), BigInt::from(210));
        assert_eq!(binom_mod_lucas(10, 4, 3).value(), 0);
        for p in [5u64, 7, 11, 101] {
            for k in 1..p {
                assert_eq!(binom_mod_lucas(p, k, p).value(), 0);
            }
        }
        assert_eq!(binom_exact(13, 6), BigInt::from(1716));
        assert_eq!(1716 % 7, 1);
        assert_eq!(binom_mod_lucas(13, 6, 7).value(), 1);
    }

    #[test]
    fn lucas_table_matches_lucas() {
        for p in [2u64, 3, 5, 7, 13, 101] {
            let t = LucasTable::new(p);
            for n in 0..300 {
                for k in 0..=n {
                    assert_eq!(t.binom(n, k), binom_mod_lucas(n, k, p).value());
                }
            }
        }
    }

    #[test]
    fn lucas_against_exact_small() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 0..120u64 {
                for k in 0..=n {
                    let exact = binom_exact(n, k as i64) % p;
                    assert_eq!(binom_mod_lucas(n, k, p).value(), exact.to_u64().unwrap());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn gen_agrees_with_exact(n in 0i64..200, k in -5i64..220) {
            prop_assert_eq!(binom_gen(n, k), binom_exact(n as u64, k));
        }

        #[test]
        fn gen_is_falling_factorial(a in -60i64..60, k in 0i64..25) {
            prop_assert_eq!(binom_gen(a, k), falling(a, k));
        }

        // C(a,k) C(a-k,j) = C(a,k+j) C(k+j,k), valid for every integer a.
        #[test]
        fn gen_trinomial_revision(a in -40i64..40, k in 0i64..12, j in 0i64..12) {
            let lhs = binom_gen(a, k) * binom_gen(a - k, j);
            let rhs = binom_gen(a, k + j) * binom_gen(k + j, k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_symmetry(n in 0u64..300, k in 0u64..300) {
            prop_assume!(k <= n);
            prop_assert_eq!(binom_exact(n, k as i64), binom_exact(n, (n - k) as i64));
        }
    }
}
