//! One checker per congruence statement: an applicability predicate, the
//! left side, the right side, and a verdict.
//!
//! Left sides are evaluated with a single fused O(p) pass per prime (see
//! [`PrimeEvaluator`]), so checking all ids at a prime costs about as much
//! as checking one.

mod eval;
mod id;

use std::cell::OnceCell;
use std::fmt;

use serde::Serialize;

pub use eval::BpjTerm;
pub use id::{CongruenceId, T31Params, ALL_IDS};

use crate::error::{Error, Result};
use crate::modarith::{legendre3, mod_inv, Residue};
use crate::primes::is_prime;

use eval::{RowSums, TheoremSums};

/// Largest prime accepted: `p^3` must fit below `2^63`.
pub const MAX_PRIME: u64 = (1 << 21) - 1;

/// Largest prime for which the half-sum identity is also checked with big
/// integers.
pub const HS_EXACT_LIMIT: u64 = 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one id at one prime. Skipped results carry no residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceResult {
    pub id: CongruenceId,
    pub p: u64,
    pub modulus: u64,
    pub lhs: Option<Residue>,
    pub rhs: Option<Residue>,
    pub verdict: Verdict,
}

impl CongruenceResult {
    pub fn skipped(id: CongruenceId, p: u64) -> Self {
        Self {
            id,
            p,
            modulus: modulus(id, p),
            lhs: None,
            rhs: None,
            verdict: Verdict::Skip,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Whether the hypothesis of `id` admits the prime `p`.
pub fn applicable(id: CongruenceId, p: u64) -> bool {
    use CongruenceId::*;
    match id {
        PS1 | PS2 => p > 3,
        T11A | T11B | X1 | X2 | X3 | HS => p > 2,
        T12A | T12B | L22A | L22B | T31(_) => p > 5,
        T13 | BPJ => true,
        W3 => p >= 5,
    }
}

/// The modulus results for `id` are reported in.
pub fn modulus(id: CongruenceId, p: u64) -> u64 {
    match id {
        CongruenceId::BPJ => p * p,
        CongruenceId::W3 => p * p * p,
        CongruenceId::HS => eval::half_sum_modulus(p),
        _ => p,
    }
}

fn validate_prime(p: u64) -> Result<()> {
    if p > MAX_PRIME {
        return Err(Error::ModulusOverflow {
            prime: p,
            exponent: 3,
        });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn frac(num: i64, den: i64, m: u64) -> Residue {
    Residue::new(num as i128, m) * mod_inv(den as i128, m).expect("denominator prime to p")
}

/// `2 sum_{p/2<j<p} C(p,j)`, `sum_{0<j<p} C(p,j)` and `2^p - 2`, plus the
/// exact comparison for small `p`.
#[derive(Clone, Copy, Debug)]
struct HalfSums {
    upper: Residue,
    all: Residue,
    target: Residue,
    exact: Option<bool>,
}

impl HalfSums {
    fn holds(&self) -> bool {
        self.exact.unwrap_or(true) && self.upper == self.target && self.all == self.target
    }
}

/// Lazily computed, shared evaluation state for a single prime.
#[derive(Debug)]
pub struct PrimeEvaluator {
    p: u64,
    sums: OnceCell<TheoremSums>,
    alternating: OnceCell<(u64, u64)>,
    binomial_rows: OnceCell<RowSums>,
    hs: OnceCell<HalfSums>,
    keep_bpj_terms: bool,
}

impl PrimeEvaluator {
    pub fn new(p: u64) -> Result<Self> {
        validate_prime(p)?;
        Ok(Self {
            p,
            sums: OnceCell::new(),
            alternating: OnceCell::new(),
            binomial_rows: OnceCell::new(),
            hs: OnceCell::new(),
            keep_bpj_terms: false,
        })
    }

    /// Also keep the per-`j` terms of the BPJ walk, see
    /// [`PrimeEvaluator::bpj_terms`].
    pub fn with_bpj_terms(mut self) -> Self {
        self.keep_bpj_terms = true;
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn sums(&self) -> &TheoremSums {
        self.sums.get_or_init(|| eval::theorem_sums(self.p))
    }

    fn binomial_rows(&self) -> &RowSums {
        self.binomial_rows
            .get_or_init(|| eval::binomial_rows(self.p, self.keep_bpj_terms))
    }

    pub fn bpj_terms(&self) -> Option<&[BpjTerm]> {
        self.binomial_rows().bpj_terms.as_deref()
    }

    fn half_sums(&self) -> Result<HalfSums> {
        if let Some(v) = self.hs.get() {
            return Ok(*v);
        }
        let p = self.p;
        let m = eval::half_sum_modulus(p);
        let (a, b, c) = self.binomial_rows().half_sums;
        let mut out = HalfSums {
            upper: Residue::from_u64(a, m),
            all: Residue::from_u64(b, m),
            target: Residue::from_u64(c, m),
            exact: None,
        };
        if p <= HS_EXACT_LIMIT {
            let (ea, eb, ec) = eval::half_sums_exact(p);
            let agree = [(&ea, a), (&eb, b), (&ec, c)]
                .iter()
                .all(|(e, v)| eval::bigint_mod(e, m) == *v);
            if !agree {
                return Err(Error::Inconsistent(format!(
                    "half sums at p = {p}: modular walk disagrees with big integers"
                )));
            }
            out.exact = Some(ea == ec && eb == ec);
        }
        let _ = self.hs.set(out);
        Ok(out)
    }

    /// Raw `sum 2^k C(3k+d, k) mod p` over the three ranges `3k+d < p`,
    /// `p <= 3k+d < 2p`, `2p <= 3k+d` (all with `k < p`).
    pub fn partial_sums(&self, d: u8) -> [Residue; 3] {
        assert!(d <= 1, "d must be 0 or 1");
        self.sums().partial[d as usize].map(|v| Residue::from_u64(v, self.p))
    }

    fn inapplicable(&self, id: CongruenceId) -> Error {
        Error::Inapplicable {
            id: id.to_string(),
            p: self.p,
        }
    }

    pub fn lhs(&self, id: CongruenceId) -> Result<Residue> {
        use CongruenceId::*;
        if !applicable(id, self.p) {
            return Err(self.inapplicable(id));
        }
        let p = self.p;
        let r = |v: u64| Residue::from_u64(v, p);
        let half = || frac(1, 2, p);
        Ok(match id {
            PS1 => r(self.sums().ps1),
            PS2 => r(self.sums().ps2),
            T11A => r(self.sums().t11a),
            T11B => r(self.sums().t11b),
            T12A => r(self.sums().t12a),
            T12B => r(self.sums().t12b),
            T13 => r(self.sums().t13),
            X1 => r(self.sums().x1) * r(5),
            X2 => r(self.sums().x2) * half(),
            X3 => r(self.sums().x3) * half(),
            L22A => r(self.rows().0),
            L22B => r(self.rows().1),
            T31(t) => {
                let raw = self.partial_sums(t.d())[t.delta() as usize];
                let sign = if (t.d() + t.delta()) % 2 == 0 { 1 } else { -1 };
                let den = if t.delta() == 0 { 1 } else { 2 };
                raw * frac(sign, den, p)
            }
            BPJ => Residue::from_u64(self.binomial_rows().bpj_max_deviation, p * p),
            W3 => Residue::from_u64(self.binomial_rows().wolstenholme, p * p * p),
            HS => {
                let h = self.half_sums()?;
                if h.upper != h.target {
                    h.upper
                } else {
                    h.all
                }
            }
        })
    }

    pub fn rhs(&self, id: CongruenceId) -> Result<Residue> {
        use CongruenceId::*;
        if !applicable(id, self.p) {
            return Err(self.inapplicable(id));
        }
        let p = self.p;
        // Odd primes only; every id using `s` requires one.
        let s = || if p % 4 == 1 { 1 } else { -1 };
        Ok(match id {
            PS1 => frac(3 * legendre3(p as i64) - 1, 2, p),
            PS2 => frac(3 * (1 - legendre3(p as i64)), 2, p),
            T11A => Residue::new((2 * (s() - 1)) as i128, p),
            T11B => Residue::new((4 * (1 - s())) as i128, p),
            T12A => frac(6 * s() - 1, 5, p),
            T12B => frac(4 * s() + 1, 5, p),
            T13 => Residue::zero(p),
            X1 | X2 => Residue::new((s() - 1) as i128, p),
            X3 => frac(3 * (s() - 1), 2, p),
            L22A => frac(3 * s() + 2, 5, p),
            L22B => frac(3 * (1 - s()), 10, p),
            T31(t) => {
                let (d, delta) = (t.d() as i64, t.delta() as i64);
                frac((4 - delta) + (3 * delta - 2) * (5 * d - 3) * s(), 10, p)
            }
            BPJ => Residue::zero(p * p),
            W3 => Residue::one(p * p * p),
            HS => self.half_sums()?.target,
        })
    }

    fn rows(&self) -> (u64, u64) {
        *self
            .alternating
            .get_or_init(|| eval::alternating_row_sums(self.p))
    }

    pub fn check(&self, id: CongruenceId) -> Result<CongruenceResult> {
        if !applicable(id, self.p) {
            return Ok(CongruenceResult::skipped(id, self.p));
        }
        let lhs = self.lhs(id)?;
        let rhs = self.rhs(id)?;
        let pass = match id {
            CongruenceId::HS => self.half_sums()?.holds(),
            _ => lhs == rhs,
        };
        Ok(CongruenceResult {
            id,
            p: self.p,
            modulus: modulus(id, self.p),
            lhs: Some(lhs),
            rhs: Some(rhs),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        })
    }
}

/// Left side of `id` at `p`, reduced to [`modulus`].
pub fn lhs_value(id: CongruenceId, p: u64) -> Result<Residue> {
    PrimeEvaluator::new(p)?.lhs(id)
}

/// Right side of `id` at `p`, reduced to [`modulus`].
pub fn rhs_value(id: CongruenceId, p: u64) -> Result<Residue> {
    PrimeEvaluator::new(p)?.rhs(id)
}

/// Checks one id. Inapplicable ids yield a [`Verdict::Skip`] result; an
/// `Err` means `p` is not a supported prime.
pub fn check(id: CongruenceId, p: u64) -> Result<CongruenceResult> {
    PrimeEvaluator::new(p)?.check(id)
}

/// Checks the requested ids (all 19 by default) at `p`, in report order.
pub fn check_all(p: u64, ids: Option<&[CongruenceId]>) -> Result<Vec<CongruenceResult>> {
    let ev = PrimeEvaluator::new(p)?;
    let mut ids = ids.map_or_else(|| ALL_IDS.to_vec(), <[_]>::to_vec);
    ids.sort();
    ids.dedup();
    ids.into_iter().map(|id| ev.check(id)).collect()
}

/// Per-`j` values of `C(p, j)` and `p (-1)^(j-1) / j` modulo `p^2`.
pub fn bpj_terms(p: u64) -> Result<Vec<BpjTerm>> {
    let ev = PrimeEvaluator::new(p)?.with_bpj_terms();
    Ok(ev.bpj_terms().unwrap_or_default().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use CongruenceId::*;

    #[test]
    fn applicability_examples() {
        assert!(!applicable(T12A, 5));
        assert!(applicable(T13, 2));
        assert!(!applicable(T11A, 2));
        assert!(applicable(X1, 3));
        assert!(applicable(X1, 5));
        assert!(!applicable(W3, 3));
        assert!(applicable(BPJ, 2));
    }

    #[test]
    fn lhs_examples() {
        assert_eq!(lhs_value(T12A, 7).unwrap().value(), 0);
        assert_eq!(1292851 % 7, 0);
        assert_eq!(lhs_value(CongruenceId::t31(0, 0).unwrap(), 7).unwrap().value(), 4);
        assert_eq!(lhs_value(T13, 3).unwrap().value(), 0);
        assert!(matches!(lhs_value(T12A, 5), Err(Error::Inapplicable { .. })));
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(rhs_value(T12A, 7).unwrap().value(), 0);
        assert_eq!(rhs_value(T11A, 3).unwrap().value(), 2);
        for p in [2u64, 3, 5, 7, 11, 101] {
            assert_eq!(rhs_value(T13, p).unwrap().value(), 0);
        }
    }

    #[test]
    fn check_examples() {
        let r = check(T11A, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lhs.unwrap().value(), 2);
        assert_eq!(r.rhs.unwrap().value(), 2);

        let w = check(W3, 7).unwrap();
        assert!(w.passed());
        assert_eq!(w.modulus, 343);
        assert_eq!(w.lhs.unwrap().value(), 1);
        assert_eq!(1716 % 343, 1);

        let s = check(T12A, 5).unwrap();
        assert_eq!(s.verdict, Verdict::Skip);
        assert!(s.lhs.is_none());
    }

    #[test]
    fn check_all_examples() {
        let r = check_all(7, None).unwrap();
        assert_eq!(r.len(), 19);
        assert!(r.iter().all(|x| x.verdict != Verdict::Fail));

        let r = check_all(2, None).unwrap();
        for x in &r {
            let expect = if matches!(x.id, T13 | BPJ) {
                Verdict::Pass
            } else {
                Verdict::Skip
            };
            assert_eq!(x.verdict, expect, "{}", x.id);
        }

        let r = check_all(5, Some(&[T12A])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].verdict, Verdict::Skip);
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(check(T13, 9).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(check(T13, 1), Err(Error::NotPrime(1))));
        assert!(matches!(
            check(T13, 2_097_169),
            Err(Error::ModulusOverflow { .. })
        ));
    }

    #[test]
    fn bpj_terms_match_binomials() {
        let terms = bpj_terms(13).unwrap();
        assert_eq!(terms.len(), 12);
        for t in terms {
            let exact = crate::binomial::binom_exact(13, t.j as i64) % 169u32;
            assert_eq!(t.lhs, u64::try_from(exact).unwrap());
            assert_eq!(t.lhs, t.rhs);
        }
    }

    #[test]
    fn small_primes_all_pass() {
        for p in crate::primes::sieve_primes(300) {
            for r in check_all(p, None).unwrap() {
                assert_ne!(r.verdict, Verdict::Fail, "{} at p = {p}: {:?}", r.id, r);
            }
        }
    }

    #[test]
    fn partial_sums_cover_full_sum() {
        for p in [7u64, 11, 13, 101, 997] {
            let ev = PrimeEvaluator::new(p).unwrap();
            for d in 0..2u8 {
                let [a, b, tail] = ev.partial_sums(d);
                let full = if d == 0 { ev.lhs(T12A) } else { ev.lhs(T12B) }.unwrap();
                assert_eq!(a + b + tail, full);
                assert!(tail.is_zero());
            }
        }
    }
}
