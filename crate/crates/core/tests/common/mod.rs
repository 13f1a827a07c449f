//! Naive exact-arithmetic oracle shared by the integration tests.
//!
//! Everything here is written from the displayed formulas with big integers
//! and big rationals, deliberately avoiding the crate's own binomial and
//! modular code so agreement means something.

#![allow(dead_code)]

use std::sync::OnceLock;

use catcong::congruences::CongruenceId;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Largest row of the shared Pascal triangle.
pub const PASCAL_ROWS: usize = 600;

fn pascal() -> &'static Vec<Vec<BigInt>> {
    static TRIANGLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TRIANGLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(PASCAL_ROWS + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=PASCAL_ROWS {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        rows
    })
}

/// `C(n, k)` from Pascal's triangle; 0 outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    assert!(n >= 0 && (n as usize) <= PASCAL_ROWS, "row {n} out of range");
    if k < 0 || k > n {
        return BigInt::zero();
    }
    pascal()[n as usize][k as usize].clone()
}

fn pow2(k: i64) -> BigInt {
    BigInt::one() << k as usize
}

fn ratio(num: BigInt, den: i64) -> BigRational {
    BigRational::new(num, BigInt::from(den))
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Canonical residue of a rational whose denominator is prime to `m`.
pub fn reduce(x: &BigRational, m: u64) -> u64 {
    let m = BigInt::from(m);
    let num = x.numer().mod_floor(&m);
    let den = x.denom().mod_floor(&m);
    let g = den.extended_gcd(&m);
    assert!(g.gcd.is_one(), "denominator {} not invertible mod {m}", x.denom());
    (num * g.x).mod_floor(&m).to_u64().unwrap()
}

/// `(-1)^((p-1)/2)`
pub fn s(p: u64) -> i64 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// `(a/3)` as the representative in {-1, 0, 1}.
pub fn legendre3(a: i64) -> i64 {
    match a.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// The exact rational left and right sides of a mod-`p` theorem congruence.
fn theorem_sides(id: CongruenceId, p: u64) -> (BigRational, BigRational) {
    use CongruenceId::*;
    let pi = p as i64;
    let sp = s(p);
    let sum = |range: std::ops::Range<i64>, f: &dyn Fn(i64) -> BigRational| {
        range.fold(BigRational::zero(), |acc, k| acc + f(k))
    };
    let catalan = |k: i64| binom(2 * k, k) / BigInt::from(k + 1);
    let catalan2 = |k: i64| binom(3 * k, k) / BigInt::from(2 * k + 1);
    match id {
        PS1 => (
            sum(0..pi, &|k| BigRational::from_integer(catalan(k))),
            ratio(BigInt::from(3 * legendre3(pi) - 1), 2),
        ),
        PS2 => (
            sum(1..pi, &|k| ratio(catalan(k), k)),
            ratio(BigInt::from(3 * (1 - legendre3(pi))), 2),
        ),
        T11A => (
            sum(1..pi, &|k| BigRational::from_integer(pow2(k) * catalan2(k))),
            int(2 * (sp - 1)),
        ),
        T11B => (
            sum(1..pi, &|k| ratio(pow2(k) * catalan2(k), k)),
            int(4 * (1 - sp)),
        ),
        T12A => (
            sum(0..pi, &|k| BigRational::from_integer(pow2(k) * binom(3 * k, k))),
            ratio(BigInt::from(6 * sp - 1), 5),
        ),
        T12B => (
            sum(0..pi, &|k| {
                BigRational::from_integer(pow2(k) * binom(3 * k + 1, k))
            }),
            ratio(BigInt::from(4 * sp + 1), 5),
        ),
        T13 => (sum(1..pi, &|k| ratio(pow2(k) * binom(3 * k, k), k)), int(0)),
        X1 => (
            int(5)
                * sum(1..pi, &|k| {
                    BigRational::from_integer(pow2(k) * binom(3 * k + 2, k))
                }),
            int(sp - 1),
        ),
        X2 => (
            sum(1..pi, &|k| ratio(pow2(k - 1) * binom(3 * k + 1, k), k)),
            int(sp - 1),
        ),
        X3 => (
            sum(1..pi, &|k| ratio(pow2(k - 1) * binom(3 * k + 2, k), k)),
            ratio(BigInt::from(3 * (sp - 1)), 2),
        ),
        L22A | L22B => {
            let shift = if id == L22A { 0 } else { pi };
            let lhs = (0..pi).fold(BigInt::zero(), |acc, s_| {
                let inner = (0..pi).fold(BigInt::zero(), |a, t| a + pow2(t) * binom(2 * s_, shift + t));
                if s_ % 2 == 0 {
                    acc + inner
                } else {
                    acc - inner
                }
            });
            let rhs = if id == L22A {
                ratio(BigInt::from(3 * sp + 2), 5)
            } else {
                ratio(BigInt::from(3 * (1 - sp)), 10)
            };
            (BigRational::from_integer(lhs), rhs)
        }
        T31(t) => {
            let (d, delta) = (t.d() as i64, t.delta() as i64);
            let lo = delta * pi - d;
            let hi = delta * pi + pi - 1 - d;
            let raw = (0..=hi / 3)
                .filter(|k| 3 * k >= lo && 3 * k <= hi)
                .fold(BigInt::zero(), |acc, k| acc + pow2(k) * binom(3 * k + d, k));
            let sign = if (d + delta) % 2 == 0 { 1 } else { -1 };
            let lhs = ratio(raw * sign, 1 << delta);
            let rhs = ratio(BigInt::from((4 - delta) + (3 * delta - 2) * (5 * d - 3) * sp), 10);
            (lhs, rhs)
        }
        BPJ | W3 | HS => unreachable!("not a mod-p theorem congruence"),
    }
}

/// Oracle values `(modulus, lhs, rhs)` for `id` at `p`, following the
/// reporting conventions of the library: BPJ reports the largest deviation
/// over `j`, W3 reports `C(2p-1, p-1)`, HS reports `2 sum_{p/2<j<p} C(p,j)`
/// against `2^p - 2`.
pub fn oracle(id: CongruenceId, p: u64) -> (u64, u64, u64) {
    use CongruenceId::*;
    let pi = p as i64;
    match id {
        BPJ => {
            let m = p * p;
            let dev = (1..pi)
                .map(|j| {
                    let sign = if j % 2 == 1 { 1 } else { -1 };
                    let expected = ratio(BigInt::from(pi * sign), j);
                    let diff = BigRational::from_integer(binom(pi, j)) - expected;
                    reduce(&diff, m)
                })
                .max()
                .unwrap_or(0);
            (m, dev, 0)
        }
        W3 => {
            let m = p * p * p;
            (
                m,
                reduce(&BigRational::from_integer(binom(2 * pi - 1, pi - 1)), m),
                1,
            )
        }
        HS => {
            let m = hs_modulus(p);
            let upper = (0..pi)
                .filter(|&j| 2 * j > pi)
                .fold(BigInt::zero(), |acc, j| acc + binom(pi, j));
            let lhs = BigRational::from_integer(upper * 2);
            let rhs = BigRational::from_integer(pow2(pi) - 2);
            (m, reduce(&lhs, m), reduce(&rhs, m))
        }
        _ => {
            let (lhs, rhs) = theorem_sides(id, p);
            (p, reduce(&lhs, p), reduce(&rhs, p))
        }
    }
}

/// `p^4` when it fits below `2^63`, else `p^3`.
pub fn hs_modulus(p: u64) -> u64 {
    p.checked_pow(4)
        .filter(|&m| m < 1 << 63)
        .unwrap_or_else(|| p.pow(3))
}

/// The exact half-sum identity `2 sum_{p/2<j<p} C(p,j) = sum_{0<j<p} C(p,j)
/// = 2^p - 2`, using multiplicative binomials for rows beyond the triangle.
pub fn half_sum_identity_exact(p: u64) -> bool {
    let mut row = Vec::with_capacity(p as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 1..=p {
        c = c * BigInt::from(p - j + 1) / BigInt::from(j);
        row.push(c.clone());
    }
    let upper: BigInt = (1..p).filter(|&j| 2 * j > p).map(|j| &row[j as usize]).sum();
    let all: BigInt = (1..p).map(|j| &row[j as usize]).sum();
    let target = (BigInt::one() << p as usize) - 2;
    let upper2 = upper * 2;
    upper2 == target && all == target
}

/// Trial division, for cross-checking prime lists.
pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
