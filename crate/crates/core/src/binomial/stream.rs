//! O(p) streaming of `C(3k+d, k) mod p` for `k = 0..p-1`.
//!
//! Each step multiplies the running value by
//! `(3k+d+1)(3k+d+2)(3k+d+3) / ((k+1)(2k+d+1)(2k+d+2))`. Factors divisible by
//! `p` move the valuation instead of being inverted, so the walk never needs
//! a Lucas fallback.

use crate::error::{Error, Result};
use crate::modarith::{inverse_table, AnyRing, ModRing, Montgomery32, Montgomery64, PlainRing, Residue};
use crate::primes::is_prime;

use super::ValuedResidue;

/// Divisibility by a fixed `p` without hardware division: for odd `p`,
/// `p | x` iff `x * p^-1 mod 2^64 <= (2^64 - 1) / p`, and the product is then
/// the exact quotient. `p` need not be prime for [`PDivisor::divides`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct PDivisor {
    p: u64,
    pinv: u64,
    lim: u64,
}

impl PDivisor {
    pub(crate) fn new(p: u64) -> Self {
        let mut inv = p;
        if p % 2 == 1 {
            for _ in 0..6 {
                inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
            }
        }
        Self {
            p,
            pinv: inv,
            lim: u64::MAX / p,
        }
    }

    #[inline]
    pub(crate) fn divides(&self, x: u64) -> bool {
        if self.p.is_multiple_of(2) {
            x.is_multiple_of(self.p)
        } else {
            x.wrapping_mul(self.pinv) <= self.lim
        }
    }

    /// Splits nonzero `x` into `(x / p^c, c)` with the quotient prime to `p`.
    #[inline]
    pub(crate) fn strip(&self, mut x: u64) -> (u64, u32) {
        debug_assert!(x != 0);
        if self.p == 2 {
            let t = x.trailing_zeros();
            return (x >> t, t);
        }
        let mut c = 0;
        loop {
            let q = x.wrapping_mul(self.pinv);
            if q > self.lim {
                return (x, c);
            }
            x = q;
            c += 1;
        }
    }
}

/// A factor `start + slope * step` whose residue mod `p` and encoding in
/// the ring are updated by additions only.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LinearFactor {
    value: i64,
    slope: i64,
    res: u64,
    res_step: u64,
    enc: u64,
    enc_step: u64,
}

impl LinearFactor {
    pub(crate) fn new<R: ModRing>(ring: &R, p: u64, start: i64, slope: i64) -> Self {
        Self {
            value: start,
            slope,
            res: start.rem_euclid(p as i64) as u64,
            res_step: slope.rem_euclid(p as i64) as u64,
            enc: ring.encode_signed(start as i128),
            enc_step: ring.encode_signed(slope as i128),
        }
    }

    #[inline]
    pub(crate) fn advance<R: ModRing>(&mut self, ring: &R, p: u64) {
        self.value += self.slope;
        self.res += self.res_step;
        if self.res >= p {
            self.res -= p;
        }
        self.enc = ring.add(self.enc, self.enc_step);
    }
}

/// A factor `p^val * unit` with possibly negative `val`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ratio {
    unit: u64,
    val: i64,
}

/// Running product `p^val * unit` in a ring modulo `p^e`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ValuedProduct<R> {
    ring: R,
    p: u64,
    exponent: u32,
    div: PDivisor,
    unit: u64,
    val: i64,
    /// Ring encodings of `p^i` for `i < exponent`.
    p_pows: [u64; 8],
}

impl<R: ModRing> ValuedProduct<R> {
    pub(crate) fn new(ring: R, p: u64, exponent: u32) -> Self {
        assert!((1..8).contains(&exponent), "unsupported exponent {exponent}");
        let mut p_pows = [0; 8];
        p_pows[0] = ring.one();
        for i in 1..exponent as usize {
            p_pows[i] = ring.mul(p_pows[i - 1], ring.encode(p));
        }
        Self {
            ring,
            p,
            exponent,
            div: PDivisor::new(p),
            unit: ring.one(),
            val: 0,
            p_pows,
        }
    }

    #[inline]
    pub(crate) fn mul(&mut self, f: &LinearFactor) {
        if f.res != 0 {
            self.unit = self.ring.mul(self.unit, f.enc);
        } else {
            debug_assert!(f.value > 0);
            let (u, c) = self.div.strip(f.value as u64);
            self.val += c as i64;
            self.unit = self.ring.mul(self.unit, self.ring.encode(u));
        }
    }

    /// Divides by a positive factor. `inv` holds ring-encoded inverses
    /// indexed by standard value (by residue mod `p` when the ring modulus is
    /// `p` itself).
    #[inline]
    pub(crate) fn div(&mut self, f: &LinearFactor, inv: &[u64]) {
        debug_assert!(f.value > 0);
        let inv_u = if f.res != 0 {
            self.lookup(f.value as u64, f.res, f.enc, inv)
        } else {
            let (u, c) = self.div.strip(f.value as u64);
            self.val -= c as i64;
            self.lookup(u, u % self.p, self.ring.encode(u), inv)
        };
        self.unit = self.ring.mul(self.unit, inv_u);
    }

    #[inline]
    fn lookup(&self, u: u64, res: u64, enc: u64, inv: &[u64]) -> u64 {
        if self.exponent == 1 {
            inv[res as usize]
        } else if (u as usize) < inv.len() {
            inv[u as usize]
        } else {
            self.ring.inverse(enc).expect("unit")
        }
    }

    #[inline]
    fn unit_of(&self, f: &LinearFactor) -> Ratio {
        if f.res != 0 {
            Ratio { unit: f.enc, val: 0 }
        } else {
            let (u, c) = self.div.strip(f.value as u64);
            Ratio {
                unit: self.ring.encode(u),
                val: c as i64,
            }
        }
    }

    #[inline]
    fn inv_unit_of(&self, f: &LinearFactor, inv: &[u64]) -> Ratio {
        if f.res != 0 {
            let unit = self.lookup(f.value as u64, f.res, f.enc, inv);
            Ratio { unit, val: 0 }
        } else {
            let (u, c) = self.div.strip(f.value as u64);
            let unit = self.lookup(u, u % self.p, self.ring.encode(u), inv);
            Ratio {
                unit,
                val: -(c as i64),
            }
        }
    }

    /// `num / den` in split form. Computing ratios separately keeps them off
    /// the running product's dependency chain.
    #[inline]
    pub(crate) fn ratio(&self, num: &LinearFactor, den: &LinearFactor, inv: &[u64]) -> Ratio {
        debug_assert!(num.value > 0 && den.value > 0);
        self.compose(self.unit_of(num), self.inv_unit_of(den, inv))
    }

    #[inline]
    pub(crate) fn compose(&self, a: Ratio, b: Ratio) -> Ratio {
        Ratio {
            unit: self.ring.mul(a.unit, b.unit),
            val: a.val + b.val,
        }
    }

    #[inline]
    pub(crate) fn apply(&mut self, r: Ratio) {
        self.unit = self.ring.mul(self.unit, r.unit);
        self.val += r.val;
    }

    /// Ring encoding of `self * r`, leaving `self` untouched.
    #[inline]
    pub(crate) fn value_times(&self, r: Ratio) -> u64 {
        let val = self.val + r.val;
        debug_assert!(val >= 0, "negative valuation");
        if val >= self.exponent as i64 {
            0
        } else {
            let u = self.ring.mul(self.unit, r.unit);
            if val == 0 {
                u
            } else {
                self.ring.mul(u, self.p_pows[val as usize])
            }
        }
    }

    pub(crate) fn val(&self) -> i64 {
        self.val
    }

    /// Ring encoding of `p^val * unit`.
    #[inline]
    pub(crate) fn value(&self) -> u64 {
        debug_assert!(self.val >= 0, "negative valuation");
        if self.val == 0 {
            self.unit
        } else if self.val >= self.exponent as i64 {
            0
        } else {
            self.ring.mul(self.unit, self.p_pows[self.val as usize])
        }
    }

    pub(crate) fn to_valued(self) -> ValuedResidue {
        let modulus = self.ring.modulus();
        ValuedResidue::from_parts(
            self.ring.decode(self.unit),
            self.val as u32,
            self.p,
            self.exponent,
            modulus,
        )
    }
}

/// Ring-level stream used by the congruence evaluators.
#[derive(Clone, Copy, Debug)]
struct RawBinomStream<R> {
    prod: ValuedProduct<R>,
    num: [LinearFactor; 3],
    den: [LinearFactor; 3],
}

impl<R: ModRing> RawBinomStream<R> {
    pub(crate) fn new(ring: R, p: u64, d: u8) -> Self {
        let d = d as i64;
        Self {
            prod: ValuedProduct::new(ring, p, 1),
            num: [
                LinearFactor::new(&ring, p, d + 1, 3),
                LinearFactor::new(&ring, p, d + 2, 3),
                LinearFactor::new(&ring, p, d + 3, 3),
            ],
            den: [
                LinearFactor::new(&ring, p, 1, 1),
                LinearFactor::new(&ring, p, d + 1, 2),
                LinearFactor::new(&ring, p, d + 2, 2),
            ],
        }
    }

    /// Current term, ring-encoded mod `p`.
    #[inline]
    pub(crate) fn current(&self) -> u64 {
        if self.prod.val() > 0 {
            0
        } else {
            self.prod.unit
        }
    }

    #[inline]
    pub(crate) fn advance(&mut self, inv: &[u64]) {
        let ring = self.prod.ring;
        let p = self.prod.p;
        for f in &self.num {
            self.prod.mul(f);
        }
        for f in &self.den {
            self.prod.div(f, inv);
        }
        for f in self.num.iter_mut().chain(self.den.iter_mut()) {
            f.advance(&ring, p);
        }
    }

    pub(crate) fn valued(&self) -> ValuedResidue {
        self.prod.to_valued()
    }
}

#[derive(Clone, Debug)]
enum Inner {
    Small(RawBinomStream<Montgomery32>, Vec<u64>),
    Large(RawBinomStream<Montgomery64>, Vec<u64>),
    Plain(RawBinomStream<PlainRing>, Vec<u64>),
}

/// Iterator over `C(3k+d, k) mod p` for `k = 0, 1, ..., p-1`.
#[derive(Clone, Debug)]
pub struct BinomStream {
    d: u8,
    p: u64,
    k: u64,
    inner: Inner,
}

/// Starts the stream of `C(3k+d, k) mod p`, `d ∈ {0, 1, 2}`.
pub fn binom_stream(d: u8, p: u64) -> Result<BinomStream> {
    if d > 2 {
        return Err(Error::Inconsistent(format!(
            "stream offset d = {d} not in {{0,1,2}}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let len = p as usize;
    let inner = match AnyRing::new(p) {
        AnyRing::Small(r) => Inner::Small(RawBinomStream::new(r, p, d), inverse_table(&r, len, p)),
        AnyRing::Large(r) => Inner::Large(RawBinomStream::new(r, p, d), inverse_table(&r, len, p)),
        AnyRing::Plain(r) => Inner::Plain(RawBinomStream::new(r, p, d), inverse_table(&r, len, p)),
    };
    Ok(BinomStream { d, p, k: 0, inner })
}

impl BinomStream {
    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Index of the next term to be yielded.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// `C(3k+d, k)` for the next index as a valued residue.
    pub fn valued(&self) -> ValuedResidue {
        match &self.inner {
            Inner::Small(s, _) => s.valued(),
            Inner::Large(s, _) => s.valued(),
            Inner::Plain(s, _) => s.valued(),
        }
    }
}

impl Iterator for BinomStream {
    type Item = Residue;

    fn next(&mut self) -> Option<Residue> {
        if self.k >= self.p {
            return None;
        }
        let more = self.k + 1 < self.p;
        let value = match &mut self.inner {
            Inner::Small(s, inv) => step(s, inv, more),
            Inner::Large(s, inv) => step(s, inv, more),
            Inner::Plain(s, inv) => step(s, inv, more),
        };
        self.k += 1;
        Some(Residue::from_u64(value, self.p))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.p - self.k) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for BinomStream {}

fn step<R: ModRing>(s: &mut RawBinomStream<R>, inv: &[u64], more: bool) -> u64 {
    let v = s.prod.ring.decode(s.current());
    if more {
        s.advance(inv);
    }
    v
}
