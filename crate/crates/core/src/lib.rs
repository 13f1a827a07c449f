//! Modular binomial machinery and exhaustive prime sweeps for congruences
//! involving Catalan numbers of order two, `C_k^(2) = C(3k, k) / (2k + 1)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`modarith`]: canonical residues, inverses, the sign symbols.
//! - [`primes`]: sieving and deterministic primality.
//! - [`binomial`]: exact / generalised / Lucas / valued binomials and the
//!   O(p) stream of `C(3k+d, k) mod p`.
//! - [`catalan`]: Catalan numbers of order `m`.
//! - [`identities`]: exact three-way check of a polynomial-coefficient
//!   identity.
//! - [`congruences`]: one checker per congruence statement.
//! - [`sweep`] / [`report`] / [`cli`]: ordered parallel sweeps over prime
//!   ranges and their text / JSON-lines / CSV output.
//!
//! ```
//! use catcong::congruences::{check, CongruenceId, Verdict};
//!
//! let r = check(CongruenceId::T12A, 7).unwrap();
//! assert_eq!(r.verdict, Verdict::Pass);
//! assert_eq!(r.lhs.unwrap().value(), 0);
//! ```

pub mod binomial;
pub mod catalan;
pub mod cli;
pub mod congruences;
pub mod error;
pub mod identities;
pub mod modarith;
pub mod primes;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
