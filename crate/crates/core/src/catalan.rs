//! Catalan numbers of order `m`: `C_n^(m) = C(mn+n, n) / (mn+1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::binomial::{binom_exact, binom_mod_lucas};
use crate::error::{Error, Result};
use crate::modarith::Residue;

/// `C_n^(m)` evaluated through both the quotient and the difference form;
/// the two must agree.
pub fn catalan_order(n: u64, m: u64) -> Result<BigInt> {
    let top = (m + 1) * n;
    let central = binom_exact(top, n as i64);
    let (quotient, rem) = central.div_rem(&BigInt::from(m * n + 1));
    let difference = &central - BigInt::from(m) * binom_exact(top, n as i64 - 1);
    if !rem.is_zero() || quotient != difference {
        return Err(Error::Inconsistent(format!(
            "C_{n}^({m}): quotient form {quotient} (remainder {rem}) vs difference form {difference}"
        )));
    }
    Ok(quotient)
}

/// `C_k^(2) mod p` from `C(3k, k) - 2 C(3k, k-1)`, which stays valid when
/// `p | 2k+1`.
pub fn catalan2_mod(k: u64, p: u64) -> Residue {
    let main = binom_mod_lucas(3 * k, k, p);
    let side = if k == 0 {
        Residue::zero(p)
    } else {
        binom_mod_lucas(3 * k, k - 1, p)
    };
    main - Residue::from_u64(2, p) * side
}
