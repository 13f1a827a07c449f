use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn reduce_signed(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub(crate) fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidModulus(m))
    } else {
        Ok(())
    }
}

/// Canonical representative of an integer class modulo `modulus`, always in
/// `[0, modulus)`.
///
/// Binary operators require both operands to share a modulus and panic
/// otherwise; mixing moduli is always a logic error in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces an arbitrary signed integer.
    ///
    /// Panics if `modulus < 2`; use [`Residue::try_new`] for untrusted input.
    pub fn new(value: i128, modulus: u64) -> Self {
        Self::try_new(value, modulus).expect("invalid modulus")
    }

    pub fn try_new(value: i128, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self {
            value: reduce_signed(value, modulus),
            modulus,
        })
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "invalid modulus {modulus}");
        Self {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        assert!(modulus >= 2, "invalid modulus {modulus}");
        let r = value.mod_floor(&BigInt::from(modulus));
        Self {
            value: r.to_u64().expect("reduced value fits"),
            modulus,
        }
    }

    pub(crate) fn from_canonical(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Self { value, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::from_u64(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Self::from_u64(1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let m = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, m);
            }
            base = mulmod(base, base, m);
            exp >>= 1;
        }
        Self::from_canonical(acc, m)
    }

    pub fn inv(self) -> Result<Self> {
        mod_inv(self.value as i128, self.modulus)
    }

    /// Multiplies by the inverse of `den`. Fallible, hence not `Div`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, den: Self) -> Result<Self> {
        Ok(self * den.inv()?)
    }

    /// Reinterprets the class modulo a divisor of the current modulus.
    pub fn reduce_to(self, modulus: u64) -> Self {
        assert!(
            modulus >= 2 && self.modulus.is_multiple_of(modulus),
            "{modulus} does not divide {}",
            self.modulus
        );
        Self::from_u64(self.value, modulus)
    }

    /// The representative in `(-m/2, m/2]`.
    pub fn signed(self) -> i128 {
        let v = self.value as i128;
        if v > self.modulus as i128 / 2 {
            v - self.modulus as i128
        } else {
            v
        }
    }

    #[inline]
    fn same_modulus(self, other: Self) -> u64 {
        assert_eq!(self.modulus, other.modulus, "residues with different moduli");
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Residue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let m = self.same_modulus(rhs);
        let s = self.value as u128 + rhs.value as u128;
        Self::from_canonical((s % m as u128) as u64, m)
    }
}

impl Sub for Residue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let m = self.same_modulus(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            m - (rhs.value - self.value)
        };
        Self::from_canonical(v, m)
    }
}

impl Mul for Residue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let m = self.same_modulus(rhs);
        Self::from_canonical(mulmod(self.value, rhs.value, m), m)
    }
}

impl Neg for Residue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero(self.modulus) - self
    }
}

impl AddAssign for Residue {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Residue {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Residue {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// `base^exp mod m` by square-and-multiply. `exp = 0` yields 1 for every
/// base, including multiples of `m`.
pub fn mod_pow(base: i64, exp: u64, m: u64) -> Result<Residue> {
    Ok(Residue::try_new(base as i128, m)?.pow(exp))
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, so prime
/// power moduli work as well as primes.
pub fn mod_inv(a: i128, m: u64) -> Result<Residue> {
    check_modulus(m)?;
    let (mut old_r, mut r) = (reduce_signed(a, m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { value: a, modulus: m });
    }
    Ok(Residue::new(old_s, m))
}

/// Inverts every entry with a single extended-Euclid call (Montgomery's
/// trick): prefix products forward, then peel one factor per step backwards.
pub fn batch_inverse(values: &[u64], m: u64) -> Result<Vec<u64>> {
    check_modulus(m)?;
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = 1 % m;
    for &v in values {
        acc = mulmod(acc, v % m, m);
        prefix.push(acc);
    }
    let mut inv_acc = match mod_inv(acc as i128, m) {
        Ok(r) => r.value(),
        Err(_) => {
            // Report the first offending entry rather than the product.
            let bad = values
                .iter()
                .find(|&&v| mod_inv(v as i128, m).is_err())
                .copied()
                .unwrap_or(acc);
            return Err(Error::NotInvertible {
                value: bad as i128,
                modulus: m,
            });
        }
    };
    let mut out = vec![0; values.len()];
    for i in (1..values.len()).rev() {
        out[i] = mulmod(inv_acc, prefix[i - 1], m);
        inv_acc = mulmod(inv_acc, values[i] % m, m);
    }
    out[0] = inv_acc;
    Ok(out)
}

/// `(-1)^((p-1)/2)` for an odd prime `p`: `+1` iff `p ≡ 1 (mod 4)`.
pub fn sign_half(p: u64) -> Result<i64> {
    if p == 2 {
        return Err(Error::EvenPrime(p));
    }
    if p.is_multiple_of(2) || !crate::primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(if p % 4 == 1 { 1 } else { -1 })
}

/// The symbol `(a/3)`: the unique `s ∈ {-1, 0, 1}` with `a ≡ s (mod 3)`.
pub fn legendre3(a: i64) -> i64 {
    match a.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow_by_repetition(base: i64, exp: u64, m: u64) -> u64 {
        let mut acc = 1i128 % m as i128;
        for _ in 0..exp {
            acc = (acc * base as i128).rem_euclid(m as i128);
        }
        acc as u64
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(5, 0, 7).unwrap().value(), 1);
        assert_eq!(pow_by_repetition(3, 6, 7), 1);
        assert_eq!(mod_pow(3, 6, 7).unwrap().value(), 1);
        assert_eq!(pow_by_repetition(2, 10, 1000), 24);
        assert_eq!(mod_pow(2, 10, 1000).unwrap().value(), 24);
        assert_eq!(mod_pow(14, 0, 7).unwrap().value(), 1);
        assert_eq!(mod_pow(-1, 3, 7).unwrap().value(), 6);
        assert!(matches!(mod_pow(2, 3, 1), Err(Error::InvalidModulus(1))));
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(1, 9).unwrap().value(), 1);
        let scan = (1..7).find(|x| 5 * x % 7 == 1).unwrap();
        assert_eq!(scan, 3);
        assert_eq!(mod_inv(5, 7).unwrap().value(), 3);
        assert!(matches!(mod_inv(2, 4), Err(Error::NotInvertible { .. })));
        assert_eq!(mod_inv(-3, 7).unwrap().value(), 2);
    }

    #[test]
    fn batch_inverse_matches_single() {
        let m = 49u64;
        let vals: Vec<u64> = (1..49).filter(|v| v % 7 != 0).collect();
        let inv = batch_inverse(&vals, m).unwrap();
        for (v, i) in vals.iter().zip(&inv) {
            assert_eq!(mulmod(*v, *i, m), 1);
        }
        let err = batch_inverse(&[3, 14, 5], 49).unwrap_err();
        assert_eq!(
            err,
            Error::NotInvertible {
                value: 14,
                modulus: 49
            }
        );
    }

    #[test]
    fn sign_half_examples() {
        assert_eq!(sign_half(5).unwrap(), 1);
        assert_eq!(sign_half(7).unwrap(), -1);
        assert_eq!(sign_half(13).unwrap(), 1);
        assert_eq!(sign_half(2), Err(Error::EvenPrime(2)));
        assert_eq!(sign_half(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn sign_half_is_euler_criterion_for_minus_one() {
        for p in crate::primes::sieve_primes(10_000).into_iter().skip(1) {
            let s = Residue::new(sign_half(p).unwrap() as i128, p);
            assert_eq!(s, mod_pow(-1, (p - 1) / 2, p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn legendre3_examples() {
        assert_eq!(legendre3(3), 0);
        assert_eq!(legendre3(7), 1);
        assert_eq!(legendre3(5), -1);
        assert_eq!(legendre3(-1), -1);
        assert_eq!(legendre3(-4), -1);
    }

    #[test]
    fn residue_ops() {
        let a = Residue::new(-3, 10);
        assert_eq!(a.value(), 7);
        assert_eq!((a + Residue::new(5, 10)).value(), 2);
        assert_eq!((Residue::new(2, 10) - a).value(), 5);
        assert_eq!((-a).value(), 3);
        assert_eq!(a.signed(), -3);
        assert_eq!(Residue::new(12, 25).reduce_to(5).value(), 2);
        assert_eq!(a.to_string(), "7 (mod 10)");
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn mixed_moduli_panic() {
        let _ = Residue::one(5) + Residue::one(7);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn inverse_roundtrip(a in -1_000_000i64..1_000_000, m in 2u64..1_000_000) {
                let g = num_integer::gcd(a.unsigned_abs(), m);
                match mod_inv(a as i128, m) {
                    Ok(x) => {
                        prop_assert_eq!(g, 1);
                        prop_assert_eq!((Residue::new(a as i128, m) * x).value(), 1 % m);
                    }
                    Err(_) => prop_assert_ne!(g, 1),
                }
            }

            #[test]
            fn legendre3_periodic(a in -1_000_000i64..1_000_000) {
                let s = legendre3(a);
                prop_assert_eq!((a - s).rem_euclid(3), 0);
                prop_assert_eq!(s, legendre3(a + 3));
            }

            #[test]
            fn matches_integer_arithmetic(
                a in -1_000_000_000i64..1_000_000_000,
                b in -1_000_000_000i64..1_000_000_000,
                m in 2u64..(1u64 << 62),
            ) {
                let (ra, rb) = (Residue::new(a as i128, m), Residue::new(b as i128, m));
                let mm = m as i128;
                prop_assert_eq!((ra + rb).value() as i128, (a as i128 + b as i128).rem_euclid(mm));
                prop_assert_eq!((ra - rb).value() as i128, (a as i128 - b as i128).rem_euclid(mm));
                prop_assert_eq!((ra * rb).value() as i128, (a as i128 * b as i128).rem_euclid(mm));
                prop_assert!((ra * rb).value() < m);
            }

            #[test]
            fn pow_matches_repetition(base in -50i64..50, exp in 0u64..40, m in 2u64..5000) {
                prop_assert_eq!(mod_pow(base, exp, m).unwrap().value(), pow_by_repetition(base, exp, m));
            }
        }
    }
}
