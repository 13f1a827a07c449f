//! Residues modulo primes and prime powers, inverses, and the two sign
//! symbols `(-1)^((p-1)/2)` and `(a/3)`.

mod residue;
pub(crate) mod ring;

pub use residue::{batch_inverse, legendre3, mod_inv, mod_pow, sign_half, Residue};
pub use ring::{AnyRing, ModRing, Montgomery32, Montgomery64, PlainRing};

pub(crate) use residue::mulmod;
pub(crate) use ring::with_ring;

/// `p^e`, or `None` when it does not fit below `2^63`.
pub fn prime_power(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e).filter(|&m| m < 1 << 63)
}

/// Inverses of `1..len` modulo the prime power `ring.modulus()` (a power of
/// `p`) in ring representation, indexed by the standard value. Entries at
/// multiples of `p` are 0.
///
/// Montgomery batch inversion: one ring inverse plus three multiplications
/// per entry, with encodings walked by addition so the loop never divides.
pub(crate) fn inverse_table<R: ModRing>(ring: &R, len: usize, p: u64) -> Vec<u64> {
    let mut table = vec![0u64; len];
    if len <= 1 {
        return table;
    }
    let one = ring.one();
    // Forward: table[i] = product of the units in [1, i).
    let mut acc = one;
    let mut enc = ring.zero();
    let mut next_multiple = p as usize;
    for (i, slot) in table.iter_mut().enumerate().skip(1) {
        enc = ring.add(enc, one);
        if i == next_multiple {
            next_multiple += p as usize;
            continue;
        }
        *slot = acc;
        acc = ring.mul(acc, enc);
    }
    // Backward: inv_acc is the inverse of the product of units in [1, i].
    let mut inv_acc = ring.inverse(acc).expect("product of units is a unit");
    for i in (1..len).rev() {
        // Prefix products of units are units, never 0.
        if table[i] != 0 {
            let prefix = table[i];
            table[i] = ring.mul(inv_acc, prefix);
            inv_acc = ring.mul(inv_acc, enc);
        }
        enc = ring.sub(enc, one);
    }
    table
}
