use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The two binary parameters `(d, δ)` of the partial-sum congruence family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct T31Params {
    d: u8,
    delta: u8,
}

impl T31Params {
    pub fn new(d: u8, delta: u8) -> Result<Self> {
        if d > 1 || delta > 1 {
            return Err(Error::UnknownId(format!("T31:{d},{delta}")));
        }
        Ok(Self { d, delta })
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }
}

/// Every checkable statement. The derived ordering is the report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CongruenceId {
    /// `sum_{k<p} C_k ≡ (3(p/3) - 1)/2 (mod p)`, `p > 3`.
    PS1,
    /// `sum_{0<k<p} C_k / k ≡ 3/2 (1 - (p/3)) (mod p)`, `p > 3`.
    PS2,
    /// `sum_{0<k<p} 2^k C_k^(2) ≡ 2(s - 1)`, odd `p`, `s = (-1)^((p-1)/2)`.
    T11A,
    /// `sum_{0<k<p} 2^k C_k^(2) / k ≡ 4(1 - s)`, odd `p`.
    T11B,
    /// `sum_{k<p} 2^k C(3k, k) ≡ (6s - 1)/5`, `p > 5`.
    T12A,
    /// `sum_{k<p} 2^k C(3k+1, k) ≡ (4s + 1)/5`, `p > 5`.
    T12B,
    /// `sum_{0<k<p} 2^k C(3k, k) / k ≡ 0`, every prime.
    T13,
    /// `5 sum_{0<k<p} 2^k C(3k+2, k) ≡ s - 1`, odd `p`.
    X1,
    /// `sum_{0<k<p} 2^(k-1) C(3k+1, k) / k ≡ s - 1`, odd `p`.
    X2,
    /// `sum_{0<k<p} 2^(k-1) C(3k+2, k) / k ≡ 3/2 (s - 1)`, odd `p`.
    X3,
    /// `sum_{s<p} (-1)^s sum_{t<p} 2^t C(2s, t) ≡ (3s + 2)/5`, `p > 5`.
    L22A,
    /// `sum_{s<p} (-1)^s sum_{t<p} 2^t C(2s, p+t) ≡ 3/10 (1 - s)`, `p > 5`.
    L22B,
    /// Partial sums of `2^k C(3k+d, k)` over `δp - d <= 3k <= δp + p - 1 - d`.
    T31(T31Params),
    /// `C(p, j) ≡ p (-1)^(j-1) / j (mod p^2)` for all `0 < j < p`.
    BPJ,
    /// `C(2p-1, p-1) ≡ 1 (mod p^3)`, `p >= 5`.
    W3,
    /// `2 sum_{p/2<j<p} C(p, j) = sum_{0<j<p} C(p, j) = 2^p - 2`, odd `p`.
    HS,
}

const fn t31(d: u8, delta: u8) -> CongruenceId {
    CongruenceId::T31(T31Params { d, delta })
}

/// All 19 checks in report order.
pub const ALL_IDS: [CongruenceId; 19] = [
    CongruenceId::PS1,
    CongruenceId::PS2,
    CongruenceId::T11A,
    CongruenceId::T11B,
    CongruenceId::T12A,
    CongruenceId::T12B,
    CongruenceId::T13,
    CongruenceId::X1,
    CongruenceId::X2,
    CongruenceId::X3,
    CongruenceId::L22A,
    CongruenceId::L22B,
    t31(0, 0),
    t31(0, 1),
    t31(1, 0),
    t31(1, 1),
    CongruenceId::BPJ,
    CongruenceId::W3,
    CongruenceId::HS,
];

impl CongruenceId {
    pub fn t31(d: u8, delta: u8) -> Result<Self> {
        Ok(CongruenceId::T31(T31Params::new(d, delta)?))
    }

    pub fn tag(&self) -> &'static str {
        use CongruenceId::*;
        match self {
            PS1 => "PS1",
            PS2 => "PS2",
            T11A => "T11A",
            T11B => "T11B",
            T12A => "T12A",
            T12B => "T12B",
            T13 => "T13",
            X1 => "X1",
            X2 => "X2",
            X3 => "X3",
            L22A => "L22A",
            L22B => "L22B",
            T31(_) => "T31",
            BPJ => "BPJ",
            W3 => "W3",
            HS => "HS",
        }
    }

    /// `(d, δ)` for the T31 family, `None` otherwise.
    pub fn params(&self) -> Option<(u8, u8)> {
        match self {
            CongruenceId::T31(t) => Some((t.d, t.delta)),
            _ => None,
        }
    }

    /// Ids selected by one token: a tag (T31 expands to its four
    /// instances) or `T31:d,δ`.
    pub fn expand(token: &str) -> Result<Vec<Self>> {
        let token = token.trim();
        if token.eq_ignore_ascii_case("T31") {
            return Ok(ALL_IDS.iter().copied().filter(|i| i.params().is_some()).collect());
        }
        Ok(vec![token.parse()?])
    }

    /// Parses a comma-separated list such as `T12A,T31:0,1,W3` or `all`.
    /// The comma inside `T31:d,δ` is recognised. The result is deduplicated
    /// and in report order.
    pub fn parse_list(list: &str) -> Result<Vec<Self>> {
        if list.trim().eq_ignore_ascii_case("all") {
            return Ok(ALL_IDS.to_vec());
        }
        let mut tokens: Vec<String> = Vec::new();
        for piece in list.split(',') {
            let piece = piece.trim();
            let glue = tokens.last().is_some_and(|last| {
                let up = last.to_ascii_uppercase();
                up.starts_with("T31:") && !up.contains(',')
            }) && piece.len() == 1
                && piece.chars().all(|c| c.is_ascii_digit());
            if glue {
                let last = tokens.last_mut().unwrap();
                last.push(',');
                last.push_str(piece);
            } else {
                tokens.push(piece.to_string());
            }
        }
        let mut ids = Vec::new();
        for t in &tokens {
            if t.is_empty() {
                return Err(Error::UnknownId(String::new()));
            }
            ids.extend(Self::expand(t)?);
        }
        ids.sort();
        ids.dedup();
        Ok(ids)
    }
}

impl fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.params() {
            Some((d, delta)) => write!(f, "T31:{d},{delta}"),
            None => f.write_str(self.tag()),
        }
    }
}

impl FromStr for CongruenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        if let Some(rest) = up.strip_prefix("T31:") {
            let mut parts = rest.split(',').map(str::trim);
            let parse = |x: Option<&str>| x.and_then(|v| v.parse::<u8>().ok());
            return match (parse(parts.next()), parse(parts.next()), parts.next()) {
                (Some(d), Some(delta), None) => Self::t31(d, delta),
                _ => Err(Error::UnknownId(s.to_string())),
            };
        }
        ALL_IDS
            .iter()
            .copied()
            .find(|id| id.params().is_none() && id.tag() == up)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

impl Serialize for CongruenceId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}
