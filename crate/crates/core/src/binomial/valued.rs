use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modarith::{mod_inv, mulmod, prime_power, with_ring, ModRing, Residue};
use crate::primes::is_prime;

/// An integer written as `p^val * unit`, with `unit` a `p`-adic unit known
/// modulo `p^exponent`. Zero is represented by `unit == 0, val == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ValuedResidue {
    unit: u64,
    val: u32,
    prime: u64,
    exponent: u32,
    modulus: u64,
}

fn unit_modulus(prime: u64, exponent: u32) -> Result<u64> {
    if exponent == 0 {
        return Err(Error::InvalidModulus(1));
    }
    prime_power(prime, exponent).ok_or(Error::ModulusOverflow { prime, exponent })
}

impl ValuedResidue {
    pub fn new(unit: u64, val: u32, prime: u64, exponent: u32) -> Result<Self> {
        let modulus = unit_modulus(prime, exponent)?;
        if unit != 0 && unit.is_multiple_of(prime) {
            return Err(Error::NotInvertible {
                value: unit as i128,
                modulus,
            });
        }
        let unit = unit % modulus;
        Ok(Self {
            unit,
            val: if unit == 0 { 0 } else { val },
            prime,
            exponent,
            modulus,
        })
    }

    pub fn zero(prime: u64, exponent: u32) -> Result<Self> {
        Self::new(0, 0, prime, exponent)
    }

    pub fn one(prime: u64, exponent: u32) -> Result<Self> {
        Self::new(1, 0, prime, exponent)
    }

    pub fn from_u64(n: u64, prime: u64, exponent: u32) -> Result<Self> {
        Self::from_bigint(&BigInt::from(n), prime, exponent)
    }

    pub fn from_bigint(n: &BigInt, prime: u64, exponent: u32) -> Result<Self> {
        let modulus = unit_modulus(prime, exponent)?;
        if n.is_zero() {
            return Self::zero(prime, exponent);
        }
        let p = BigInt::from(prime);
        let mut x = n.clone();
        let mut val = 0;
        loop {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            x = q;
            val += 1;
        }
        let unit = x.mod_floor(&BigInt::from(modulus)).to_u64().unwrap();
        Self::new(unit, val, prime, exponent)
    }

    pub(crate) fn from_parts(unit: u64, val: u32, prime: u64, exponent: u32, modulus: u64) -> Self {
        debug_assert!(unit < modulus && (unit == 0 || !unit.is_multiple_of(prime)));
        Self {
            unit,
            val: if unit == 0 { 0 } else { val },
            prime,
            exponent,
            modulus,
        }
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn val(&self) -> u32 {
        self.val
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `p^exponent`, the modulus the unit is known to.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    fn compatible(&self, other: &Self) {
        assert!(
            self.prime == other.prime && self.exponent == other.exponent,
            "valued residues over different prime powers"
        );
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        if self.is_zero() || other.is_zero() {
            return Self::from_parts(0, 0, self.prime, self.exponent, self.modulus);
        }
        Self::from_parts(
            mulmod(self.unit, other.unit, self.modulus),
            self.val + other.val,
            self.prime,
            self.exponent,
            self.modulus,
        )
    }

    /// Exact division; fails on a zero divisor or when the quotient would
    /// have negative valuation.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.compatible(other);
        if other.is_zero() {
            return Err(Error::NotInvertible {
                value: 0,
                modulus: self.modulus,
            });
        }
        if self.is_zero() {
            return Ok(*self);
        }
        let val = self.val.checked_sub(other.val).ok_or(Error::NegativeValuation)?;
        let inv = mod_inv(other.unit as i128, self.modulus)?.value();
        Ok(Self::from_parts(
            mulmod(self.unit, inv, self.modulus),
            val,
            self.prime,
            self.exponent,
            self.modulus,
        ))
    }

    /// The class of `p^val * unit` modulo `p^exponent`.
    pub fn to_residue(&self) -> Residue {
        if self.is_zero() || self.val >= self.exponent {
            return Residue::zero(self.modulus);
        }
        let scale = self.prime.pow(self.val);
        Residue::from_u64(mulmod(scale, self.unit, self.modulus), self.modulus)
    }

    /// Same number with the unit reduced to a smaller exponent.
    pub fn with_exponent(&self, exponent: u32) -> Result<Self> {
        assert!(exponent <= self.exponent, "cannot lift precision");
        let modulus = unit_modulus(self.prime, exponent)?;
        Ok(Self::from_parts(
            self.unit % modulus,
            self.val,
            self.prime,
            exponent,
            modulus,
        ))
    }
}

impl fmt::Display for ValuedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^{} * {} (unit mod {})",
            self.prime, self.val, self.unit, self.modulus
        )
    }
}

fn validate(p: u64, e: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    unit_modulus(p, e)
}

/// `sum_{i>=1} floor(n / p^i)`, the exponent of `p` in `n!`.
pub(crate) fn legendre_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0u64;
    while n > 0 {
        n /= p;
        v += n;
    }
    v as u32
}

/// Product of the integers in `[1, n]` prime to `p`, mod `p^e`.
fn unit_factorial<R: ModRing>(ring: &R, n: u64, p: u64, pe: u64, wilson_neg: bool) -> u64 {
    let mut acc = ring.one();
    if n / pe % 2 == 1 && wilson_neg {
        acc = ring.neg(acc);
    }
    let one = ring.one();
    let mut x = one;
    let mut c = 1 % p;
    for _ in 1..=n % pe {
        if c != 0 {
            acc = ring.mul(acc, x);
        }
        x = ring.add(x, one);
        c += 1;
        if c == p {
            c = 0;
        }
    }
    acc
}

pub(crate) fn factorial_unit_in<R: ModRing>(ring: &R, mut n: u64, p: u64, e: u32) -> u64 {
    let pe = ring.modulus();
    // Units of Z/p^e multiply to -1, except for p = 2, e >= 3 where they
    // multiply to +1.
    let wilson_neg = !(p == 2 && e >= 3);
    let mut acc = ring.one();
    while n > 0 {
        acc = ring.mul(acc, unit_factorial(ring, n, p, pe, wilson_neg));
        n /= p;
    }
    acc
}

/// `n! = p^v * u` with `v` from Legendre's formula and `u` a unit mod `p^e`.
pub fn factorial_decomp(n: u64, p: u64, e: u32) -> Result<ValuedResidue> {
    let pe = validate(p, e)?;
    let unit = with_ring!(pe, r => r.decode(factorial_unit_in(&r, n, p, e)));
    Ok(ValuedResidue::from_parts(
        unit,
        legendre_valuation(n, p),
        p,
        e,
        pe,
    ))
}

/// `C(n, k)` as a valued residue, composed from three factorial
/// decompositions. Zero when `k > n`.
pub fn binom_mod_valued(n: u64, k: u64, p: u64, e: u32) -> Result<ValuedResidue> {
    let pe = validate(p, e)?;
    if k > n {
        return ValuedResidue::zero(p, e);
    }
    let val = legendre_valuation(n, p) - legendre_valuation(k, p) - legendre_valuation(n - k, p);
    let unit = with_ring!(pe, r => {
        let num = factorial_unit_in(&r, n, p, e);
        let den = r.mul(factorial_unit_in(&r, k, p, e), factorial_unit_in(&r, n - k, p, e));
        r.decode(r.mul(num, r.inverse(den).expect("unit")))
    });
    Ok(ValuedResidue::from_parts(unit, val, p, e, pe))
}
