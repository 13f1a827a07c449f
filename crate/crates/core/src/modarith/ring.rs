//! Hot-loop modular arithmetic.
//!
//! Elements are bare `u64`s in the ring's internal representation (Montgomery
//! form for odd moduli). They only make sense relative to the ring that
//! produced them; convert with [`ModRing::encode`] / [`ModRing::decode`] at the
//! boundary.

use super::residue::{mod_inv, mulmod, reduce_signed};

pub trait ModRing: Copy + Send + Sync {
    fn modulus(&self) -> u64;
    fn encode(&self, x: u64) -> u64;
    fn decode(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn one(&self) -> u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    // Branch-free: when the true result is already reduced, the other
    // candidate wraps around to something larger, so `min` picks correctly.
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        s.min(s.wrapping_sub(self.modulus()))
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        let d = a.wrapping_sub(b);
        d.min(d.wrapping_add(self.modulus()))
    }

    #[inline]
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus() - a
        }
    }

    fn encode_signed(&self, x: i128) -> u64 {
        self.encode(reduce_signed(x, self.modulus()))
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Unreduced product for dot-product accumulation. Sums of these stay
    /// exact in a `u128` for any realistic term count; finish with
    /// [`ModRing::reduce_wide`].
    #[inline]
    fn mul_wide(&self, a: u64, b: u64) -> u128 {
        self.mul(a, b) as u128
    }

    #[inline]
    fn reduce_wide(&self, x: u128) -> u64 {
        (x % self.modulus() as u128) as u64
    }

    fn inverse(&self, a: u64) -> Option<u64> {
        let x = mod_inv(self.decode(a) as i128, self.modulus()).ok()?;
        Some(self.encode(x.value()))
    }
}

/// Montgomery arithmetic with `R = 2^32` for odd moduli below `2^31`.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery32 {
    m: u32,
    m_inv: u32,
    r2: u64,
    one: u64,
}

impl Montgomery32 {
    pub fn new(m: u64) -> Self {
        assert!(m % 2 == 1 && m > 1 && m < 1 << 31, "bad modulus {m}");
        let m32 = m as u32;
        let mut inv = m32;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(m32.wrapping_mul(inv)));
        }
        let r2 = ((u64::MAX % m) + 1) % m;
        let mut ring = Self {
            m: m32,
            m_inv: inv,
            r2,
            one: 0,
        };
        ring.one = ring.encode(1);
        ring
    }

    #[inline]
    fn redc(&self, t: u64) -> u64 {
        let lo = t as u32;
        let hi = (t >> 32) as u32;
        let q = lo.wrapping_mul(self.m_inv);
        let qm_hi = ((q as u64 * self.m as u64) >> 32) as u32;
        let d = hi.wrapping_sub(qm_hi);
        d.min(d.wrapping_add(self.m)) as u64
    }
}

impl ModRing for Montgomery32 {
    #[inline]
    fn modulus(&self) -> u64 {
        self.m as u64
    }
    #[inline]
    fn encode(&self, x: u64) -> u64 {
        self.redc((x % self.m as u64) * self.r2)
    }
    #[inline]
    fn decode(&self, a: u64) -> u64 {
        self.redc(a)
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a * b)
    }
    // Raw products are below 2^62, so the reduction waits until the end.
    #[inline]
    fn mul_wide(&self, a: u64, b: u64) -> u128 {
        (a * b) as u128
    }
    fn reduce_wide(&self, x: u128) -> u64 {
        self.redc((x % ((self.m as u128) << 32)) as u64)
    }
    #[inline]
    fn one(&self) -> u64 {
        self.one
    }
}

/// Montgomery arithmetic with `R = 2^64` for odd moduli below `2^63`.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery64 {
    m: u64,
    m_inv: u64,
    r2: u64,
    one: u64,
}

impl Montgomery64 {
    pub fn new(m: u64) -> Self {
        assert!(m % 2 == 1 && m > 1 && m < 1 << 63, "bad modulus {m}");
        let mut inv = m;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        let r2 = ((u128::MAX % m as u128 + 1) % m as u128) as u64;
        let mut ring = Self {
            m,
            m_inv: inv,
            r2,
            one: 0,
        };
        ring.one = ring.encode(1);
        ring
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let lo = t as u64;
        let hi = (t >> 64) as u64;
        let q = lo.wrapping_mul(self.m_inv);
        let qm_hi = ((q as u128 * self.m as u128) >> 64) as u64;
        let d = hi.wrapping_sub(qm_hi);
        d.min(d.wrapping_add(self.m))
    }
}

impl ModRing for Montgomery64 {
    #[inline]
    fn modulus(&self) -> u64 {
        self.m
    }
    #[inline]
    fn encode(&self, x: u64) -> u64 {
        self.redc((x % self.m) as u128 * self.r2 as u128)
    }
    #[inline]
    fn decode(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }
    #[inline]
    fn one(&self) -> u64 {
        self.one
    }
}

/// Plain remainder arithmetic; used for even moduli (powers of two).
#[derive(Clone, Copy, Debug)]
pub struct PlainRing {
    m: u64,
}

impl PlainRing {
    pub fn new(m: u64) -> Self {
        assert!(m > 1 && m < 1 << 63, "bad modulus {m}");
        Self { m }
    }
}

impl ModRing for PlainRing {
    #[inline]
    fn modulus(&self) -> u64 {
        self.m
    }
    #[inline]
    fn encode(&self, x: u64) -> u64 {
        x % self.m
    }
    #[inline]
    fn decode(&self, a: u64) -> u64 {
        a
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.m)
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
}

/// Picks the cheapest ring for a modulus.
#[derive(Clone, Copy, Debug)]
pub enum AnyRing {
    Small(Montgomery32),
    Large(Montgomery64),
    Plain(PlainRing),
}

impl AnyRing {
    pub fn new(m: u64) -> Self {
        if m.is_multiple_of(2) {
            AnyRing::Plain(PlainRing::new(m))
        } else if m < 1 << 31 {
            AnyRing::Small(Montgomery32::new(m))
        } else {
            AnyRing::Large(Montgomery64::new(m))
        }
    }
}

/// Runs `$body` with `$r` bound to the concrete ring chosen for modulus `$m`,
/// monomorphising the body once per ring type.
macro_rules! with_ring {
    ($m:expr, $r:ident => $body:expr) => {
        match $crate::modarith::AnyRing::new($m) {
            $crate::modarith::AnyRing::Small($r) => $body,
            $crate::modarith::AnyRing::Large($r) => $body,
            $crate::modarith::AnyRing::Plain($r) => $body,
        }
    };
}
pub(crate) use with_ring;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_ring<R: ModRing>(r: R, a: u64, b: u64) {
        let m = r.modulus();
        let (a, b) = (a % m, b % m);
        let (ea, eb) = (r.encode(a), r.encode(b));
        assert_eq!(r.decode(ea), a);
        assert_eq!(r.decode(r.mul(ea, eb)), mulmod(a, b, m));
        assert_eq!(
            r.decode(r.add(ea, eb)),
            ((a as u128 + b as u128) % m as u128) as u64
        );
        assert_eq!(r.decode(r.sub(ea, eb)), reduce_signed(a as i128 - b as i128, m));
        assert_eq!(r.decode(r.one()), 1);
    }

    #[test]
    fn edge_moduli() {
        for m in [
            3u64,
            5,
            7,
            (1 << 31) - 1,
            (1 << 31) + 11,
            (1 << 63) - 25,
            2,
            4,
            16,
        ] {
            let ring = AnyRing::new(m);
            for (a, b) in [(0, 0), (1, m - 1), (m - 1, m - 1), (m / 2, m / 3 + 1)] {
                with_ring!(m, r => check_ring(r, a, b));
            }
            let _ = ring;
        }
    }

    proptest! {
        #[test]
        fn small_montgomery(m in (1u64..(1 << 30)).prop_map(|x| 2 * x + 1), a: u64, b: u64) {
            check_ring(Montgomery32::new(m), a, b);
        }

        #[test]
        fn large_montgomery(m in (1u64..(1 << 62)).prop_map(|x| 2 * x + 1), a: u64, b: u64) {
            check_ring(Montgomery64::new(m), a, b);
        }

        #[test]
        fn ring_pow_and_inverse(m in (1u64..100_000).prop_map(|x| 2 * x + 1), a in 1u64..1_000_000, e in 0u64..200) {
            with_ring!(m, r => {
                let ea = r.encode(a);
                prop_assert_eq!(r.decode(r.pow(ea, e)), crate::modarith::Residue::from_u64(a, m).pow(e).value());
                if let Some(inv) = r.inverse(ea) {
                    prop_assert_eq!(r.decode(r.mul(inv, ea)), 1);
                } else {
                    prop_assert_ne!(num_integer::gcd(a, m), 1);
                }
            });
        }
    }
}
