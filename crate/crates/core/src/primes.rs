//! Prime generation for range sweeps, plus a deterministic primality test for
//! one-off checks.

use crate::error::{Error, Result};

/// Above this limit sieving switches to fixed-size segments.
const SEGMENT_THRESHOLD: u64 = 10_000_000;
const SEGMENT_LEN: u64 = 1 << 18;

/// All primes `<= limit`, ascending.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    if limit > SEGMENT_THRESHOLD {
        return PrimeRange { lo: 2, hi: limit }.iter().collect();
    }
    simple_sieve(limit)
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases are a complete
/// witness set for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The primes in `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeRange {
    lo: u64,
    hi: u64,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo < 2 || hi < lo {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn iter(&self) -> SegmentedPrimes {
        SegmentedPrimes::new(self.lo, self.hi)
    }

    /// Cuts the range into at most `parts` contiguous, disjoint subranges
    /// that cover it exactly.
    pub fn split(&self, parts: u64) -> Vec<PrimeRange> {
        let parts = parts.max(1);
        let width = self.hi - self.lo + 1;
        let step = width.div_ceil(parts);
        let mut out = Vec::new();
        let mut lo = self.lo;
        while lo <= self.hi {
            let hi = lo.saturating_add(step - 1).min(self.hi);
            out.push(PrimeRange { lo, hi });
            if hi == u64::MAX {
                break;
            }
            lo = hi + 1;
        }
        out
    }
}

impl IntoIterator for PrimeRange {
    type Item = u64;
    type IntoIter = SegmentedPrimes;
    fn into_iter(self) -> SegmentedPrimes {
        self.iter()
    }
}

/// Segmented sieve of Eratosthenes over `[lo, hi]`.
#[derive(Debug)]
pub struct SegmentedPrimes {
    base: Vec<u64>,
    next_lo: u64,
    hi: u64,
    buf: Vec<u64>,
    pos: usize,
    done: bool,
}

impl SegmentedPrimes {
    fn new(lo: u64, hi: u64) -> Self {
        let root = (hi as f64).sqrt() as u64 + 1;
        let base = simple_sieve(root.min(hi));
        Self {
            base,
            next_lo: lo.max(2),
            hi,
            buf: Vec::new(),
            pos: 0,
            done: hi < lo.max(2),
        }
    }

    fn fill(&mut self) {
        self.buf.clear();
        self.pos = 0;
        let lo = self.next_lo;
        let hi = lo.saturating_add(SEGMENT_LEN - 1).min(self.hi);
        let len = (hi - lo + 1) as usize;
        let mut composite = vec![false; len];
        for &q in &self.base {
            if q.saturating_mul(q) > hi {
                break;
            }
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut j = start;
            while j <= hi {
                composite[(j - lo) as usize] = true;
                j += q;
            }
        }
        self.buf.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        if hi >= self.hi {
            self.done = true;
        } else {
            self.next_lo = hi + 1;
        }
    }
}

impl Iterator for SegmentedPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(&p) = self.buf.get(self.pos) {
                self.pos += 1;
                return Some(p);
            }
            if self.done {
                return None;
            }
            self.fill();
        }
    }
}
