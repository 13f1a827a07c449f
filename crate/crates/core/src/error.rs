use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i128, modulus: u64 },

    #[error("expected an odd prime, got {0}")]
    EvenPrime(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {prime}^{exponent} does not fit in 63 bits")]
    ModulusOverflow { prime: u64, exponent: u32 },

    #[error("invalid prime range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("negative p-adic valuation while dividing")]
    NegativeValuation,

    #[error("{id} does not apply to p = {p}")]
    Inapplicable { id: String, p: u64 },

    #[error("unknown congruence id `{0}`")]
    UnknownId(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
