//! Per-prime evaluation of the left-hand sides. Every routine is O(p) ring
//! operations; results come back as standard residues.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::binomial::{binom_exact, LinearFactor, PDivisor, ValuedProduct};
use crate::modarith::{inverse_table, mod_inv, mulmod, prime_power, with_ring, ModRing};

/// Raw sums over `k` needed by the mod-`p` theorem congruences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct TheoremSums {
    /// `sum_{k<p} C_k`
    pub ps1: u64,
    /// `sum_{0<k<p} C_k / k`
    pub ps2: u64,
    /// `sum_{0<k<p} 2^k C_k^(2)`
    pub t11a: u64,
    /// `sum_{0<k<p} 2^k C_k^(2) / k`
    pub t11b: u64,
    /// `sum_{k<p} 2^k C(3k, k)`
    pub t12a: u64,
    /// `sum_{k<p} 2^k C(3k+1, k)`
    pub t12b: u64,
    /// `sum_{0<k<p} 2^k C(3k, k) / k`
    pub t13: u64,
    /// `sum_{0<k<p} 2^k C(3k+2, k)`
    pub x1: u64,
    /// `sum_{0<k<p} 2^k C(3k+1, k) / k`
    pub x2: u64,
    /// `sum_{0<k<p} 2^k C(3k+2, k) / k`
    pub x3: u64,
    /// `[d][b]`: `sum 2^k C(3k+d, k)` over `3k+d < p` (b = 0),
    /// `p <= 3k+d < 2p` (b = 1) and `3k+d >= 2p` (b = 2), `k < p`.
    pub partial: [[u64; 3]; 2],
}

pub(crate) fn theorem_sums(p: u64) -> TheoremSums {
    with_ring!(p, r => theorem_sums_in(r, p))
}

#[inline]
fn bucket(three_k_plus_d: u64, p: u64) -> usize {
    (three_k_plus_d >= p) as usize + (three_k_plus_d >= 2 * p) as usize
}

fn theorem_sums_in<R: ModRing>(ring: R, p: u64) -> TheoremSums {
    let inv = inverse_table(&ring, p as usize, p);
    // One walk yields all three sequences: with U_d(k) = 2^k C(3k+d, k),
    //   U_1(k) = U_0(k) (3k+1) / (2k+1),
    //   U_2(k) = U_1(k) (3k+2) / (2k+2),
    //   U_0(k+1) = 6 U_2(k).
    let mut walk = ValuedProduct::new(ring, p, 1);
    let mut n1 = LinearFactor::new(&ring, p, 1, 3);
    let mut n2 = LinearFactor::new(&ring, p, 2, 3);
    let mut d1 = LinearFactor::new(&ring, p, 1, 2);
    let mut d2 = LinearFactor::new(&ring, p, 2, 2);
    let six = LinearFactor::new(&ring, p, 6, 0);
    // C_{k+1} = C_k (4k+2) / (k+2)
    let mut catalan = ValuedProduct::new(ring, p, 1);
    let mut cat_num = LinearFactor::new(&ring, p, 2, 4);
    let mut cat_den = LinearFactor::new(&ring, p, 2, 1);

    let z = ring.zero();
    let (mut ps1, mut t12a, mut t12b, mut x1) = (z, z, z, z);
    // Sums weighted by 1/k, reduced once at the end.
    let (mut ps2, mut t13, mut x2, mut x3) = (0u128, 0u128, 0u128, 0u128);
    let mut partial = [[z; 3]; 2];
    let six = walk.ratio(&six, &LinearFactor::new(&ring, p, 1, 0), &inv);

    for k in 0..p {
        // Only `walk.apply` and `catalan.apply` depend on the previous k.
        let r1 = walk.ratio(&n1, &d1, &inv);
        let r12 = walk.compose(r1, walk.ratio(&n2, &d2, &inv));
        let u0 = walk.value();
        let u1 = walk.value_times(r1);
        let u2 = walk.value_times(r12);
        let c = catalan.value();

        t12a = ring.add(t12a, u0);
        t12b = ring.add(t12b, u1);
        x1 = ring.add(x1, u2);
        ps1 = ring.add(ps1, c);
        let b0 = bucket(3 * k, p);
        let b1 = bucket(3 * k + 1, p);
        partial[0][b0] = ring.add(partial[0][b0], u0);
        partial[1][b1] = ring.add(partial[1][b1], u1);

        // inv[0] is 0, so k = 0 contributes nothing here.
        let ik = inv[k as usize];
        t13 += ring.mul_wide(u0, ik);
        x2 += ring.mul_wide(u1, ik);
        x3 += ring.mul_wide(u2, ik);
        ps2 += ring.mul_wide(c, ik);

        if k + 1 < p {
            walk.apply(walk.compose(r12, six));
            catalan.apply(catalan.ratio(&cat_num, &cat_den, &inv));
            for f in [&mut n1, &mut n2, &mut d1, &mut d2, &mut cat_num, &mut cat_den] {
                f.advance(&ring, p);
            }
        }
    }
    // The k = 0 term of x1 is U_2(0) = 1, which the sum excludes.
    let x1 = ring.sub(x1, ring.one());
    let (ps2, t13, x2, x3) = (
        ring.reduce_wide(ps2),
        ring.reduce_wide(t13),
        ring.reduce_wide(x2),
        ring.reduce_wide(x3),
    );

    // 2^k C_k^(2) = 3 U_0(k) - 2 U_1(k) termwise, so both second-order sums
    // are fixed combinations of the sums above (the k = 0 term is 3 - 2 = 1).
    let three = ring.encode(3);
    let two = ring.encode(2);
    let comb = |a: u64, b: u64| ring.sub(ring.mul(three, a), ring.mul(two, b));
    let t11a = ring.sub(comb(t12a, t12b), ring.one());
    let t11b = comb(t13, x2);

    let dec = |x: u64| ring.decode(x);
    TheoremSums {
        ps1: dec(ps1),
        ps2: dec(ps2),
        t11a: dec(t11a),
        t11b: dec(t11b),
        t12a: dec(t12a),
        t12b: dec(t12b),
        t13: dec(t13),
        x1: dec(x1),
        x2: dec(x2),
        x3: dec(x3),
        partial: partial.map(|row| row.map(dec)),
    }
}

/// `sum_{s<p} (-1)^s F_a(2s)` with `F_a(n) = sum_{t<p} 2^t C(n, a+t)`, for
/// `a = 0` and `a = p`, both mod `p`.
///
/// Pascal's rule gives `F_a(n+1) = 3 F_a(n) + C(n, a-1) - 2^p C(n, a+p-1)`
/// with `F_a(0) = [a = 0]`. For `n <= 2p-2`, Lucas' theorem leaves only
/// `C(p-1, p-1) = 1` among the boundary terms: `C(n, p-1)` mod `p` vanishes
/// unless `n = p-1`, and `C(n, -1) = C(n, 2p-1) = 0`.
pub(crate) fn alternating_row_sums(p: u64) -> (u64, u64) {
    with_ring!(p, r => {
        let two_p = r.pow(r.encode(2), p);
        let one = r.one();
        // f = F_0(n), g = F_p(n); both rows advance together.
        let (mut f, mut g) = (one, r.zero());
        let (mut acc_f, mut acc_g) = (r.zero(), r.zero());
        let triple = |x: u64| r.add(r.add(x, x), x);
        let step = |f: &mut u64, g: &mut u64, n: u64| {
            *f = triple(*f);
            *g = triple(*g);
            if n + 1 == p {
                *f = r.sub(*f, two_p);
                *g = r.add(*g, one);
            }
        };
        for s in 0..p {
            if s % 2 == 0 {
                acc_f = r.add(acc_f, f);
                acc_g = r.add(acc_g, g);
            } else {
                acc_f = r.sub(acc_f, f);
                acc_g = r.sub(acc_g, g);
            }
            if s + 1 < p {
                step(&mut f, &mut g, 2 * s);
                step(&mut f, &mut g, 2 * s + 1);
            }
        }
        (r.decode(acc_f), r.decode(acc_g))
    })
}

/// Modulus used for the half-sum identity: `p^4` where it fits in 63 bits,
/// otherwise `p^3`.
pub(crate) fn half_sum_modulus(p: u64) -> u64 {
    prime_power(p, 4)
        .or_else(|| prime_power(p, 3))
        .expect("prime below the supported bound")
}

/// One `j` of the `C(p, j) mod p^2` check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BpjTerm {
    pub j: u64,
    /// `C(p, j) mod p^2`
    pub lhs: u64,
    /// `p (-1)^(j-1) j^-1 mod p^2`
    pub rhs: u64,
}

/// Everything derived from the row `C(p, j)`, `0 < j < p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RowSums {
    /// Largest canonical `C(p, j) - p (-1)^(j-1) / j mod p^2` over `j`; 0
    /// iff every `j` passes.
    pub bpj_max_deviation: u64,
    pub bpj_terms: Option<Vec<BpjTerm>>,
    /// `(2 sum_{p/2<j<p} C(p,j), sum_{0<j<p} C(p,j), 2^p - 2)` modulo
    /// [`half_sum_modulus`].
    pub half_sums: (u64, u64, u64),
    /// `C(2p-1, p-1) mod p^3`.
    pub wolstenholme: u64,
}

/// One pass modulo `M = p^4` (or `p^3`) over
/// `C(p, j) = p(p-1)...(p-j+1) / j!`: falling products and factorials
/// forwards, a single inversion of `(p-1)!`, then inverse factorials
/// backwards. The same pass gives `C(2p-1, p-1) = prod (p+i) / (p-1)!`.
pub(crate) fn binomial_rows(p: u64, keep_terms: bool) -> RowSums {
    let m = half_sum_modulus(p);
    with_ring!(m, r => rows_in(r, p, keep_terms))
}

fn rows_in<R: ModRing>(r: R, p: u64, keep_terms: bool) -> RowSums {
    let n = p as usize;
    let one = r.one();
    let p_enc = r.encode(p);
    let p2 = p * p;

    // falling[j] = p (p-1) ... (p-j+1), fact[j] = j!
    let mut falling = vec![0u64; n];
    let mut fact = vec![0u64; n];
    let (mut f, mut fa, mut wolst) = (p_enc, one, one);
    let mut j_enc = one;
    let mut p_plus_j = r.add(p_enc, one);
    for j in 1..n {
        falling[j] = f;
        fact[j] = fa;
        wolst = r.mul(wolst, p_plus_j);
        p_plus_j = r.add(p_plus_j, one);
        f = r.mul(f, r.sub(p_enc, j_enc));
        j_enc = r.add(j_enc, one);
        fa = r.mul(fa, j_enc);
    }

    let inv_top = if n > 1 {
        r.inverse(fact[n - 1]).expect("(p-1)! is a unit")
    } else {
        one
    };
    let wolstenholme = r.decode(r.mul(wolst, inv_top)) % (p2 * p);

    // j C(p, j) = falling[j] / (j-1)!, and the claim is that this is
    // (-1)^(j-1) p mod p^2. Montgomery form preserves divisibility by p^2
    // because p^2 | M and R is a unit, so the test runs on encodings.
    let by_p2 = PDivisor::new(p2);
    let mut j_enc = r.sub(j_enc, one);
    let neg_p = r.neg(p_enc);
    let (mut upper, mut all) = (r.zero(), r.zero());
    let mut inv_fact = inv_top;
    let mut bad = Vec::new();
    let mut terms = keep_terms.then(|| Vec::with_capacity(n.saturating_sub(1)));
    for j in (1..n).rev() {
        let c = r.mul(falling[j], inv_fact);
        inv_fact = r.mul(inv_fact, j_enc);
        j_enc = r.sub(j_enc, one);
        let jc = r.mul(falling[j], inv_fact);
        all = r.add(all, c);
        if 2 * j as u64 > p {
            upper = r.add(upper, c);
        }
        let target = if j % 2 == 1 { p_enc } else { neg_p };
        if !by_p2.divides(r.sub(jc, target)) {
            bad.push((j as u64, r.decode(c) % p2));
        }
        if let Some(t) = terms.as_mut() {
            t.push((j as u64, r.decode(c) % p2));
        }
    }

    let rhs_of = |j: u64| {
        let inv_j = mod_inv(j as i128, p2).expect("j < p is a unit").value();
        let v = mulmod(p, inv_j, p2);
        if j % 2 == 1 {
            v
        } else {
            (p2 - v) % p2
        }
    };
    let bpj_max_deviation = bad
        .iter()
        .map(|&(j, lhs)| (lhs + p2 - rhs_of(j)) % p2)
        .max()
        .unwrap_or(0);
    let bpj_terms = terms.map(|mut t| {
        t.reverse();
        t.into_iter()
            .map(|(j, lhs)| BpjTerm {
                j,
                lhs,
                rhs: rhs_of(j),
            })
            .collect()
    });

    let two_pow = r.sub(r.pow(r.encode(2), p), r.encode(2));
    RowSums {
        bpj_max_deviation,
        bpj_terms,
        half_sums: (r.decode(r.add(upper, upper)), r.decode(all), r.decode(two_pow)),
        wolstenholme,
    }
}

/// The same three quantities as exact integers.
pub(crate) fn half_sums_exact(p: u64) -> (BigInt, BigInt, BigInt) {
    let mut upper = BigInt::from(0);
    let mut all = BigInt::from(0);
    for j in 1..p {
        let c = binom_exact(p, j as i64);
        if 2 * j > p {
            upper += &c;
        }
        all += c;
    }
    let two_pow = (BigInt::from(1) << p as usize) - 2;
    (upper * 2, all, two_pow)
}

pub(crate) fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    use num_integer::Integer;
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}
