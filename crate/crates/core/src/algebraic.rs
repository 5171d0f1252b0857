//! Feasibility of normal bases from one-dimensional algebraic groups.
//!
//! An elliptic curve over `F_q` with a point of order `n` suitable for an
//! elliptic normal basis exists as soon as `n_q <= sqrt(q)`, where `n_q` is
//! built prime by prime from `n`:
//!
//! * `l` does not divide `q - 1`: `v_l(n_q) = v_l(n)`,
//! * `l` divides `q - 1` and `n`: `v_l(n_q) = max(2 v_l(q - 1) + 1, 2 v_l(n))`,
//! * `l` does not divide `n`: `v_l(n_q) = 0`.
//!
//! For `F_{2^n}` the search goes through an intermediate field `F_{2^e}` with
//! `e | n` small enough for Zech-logarithm tables, and asks for an elliptic
//! (or multiplicative-group) normal basis of degree `d = n / e` over it.

use std::fmt;

use crate::gf2x::{MAX_ZECH_DEGREE, MIN_ZECH_DEGREE};
use crate::numtheory::{self, pow_mod, valuation};
use crate::{Error, Result};

/// Valuations of one prime `l | n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeValuation {
    pub ell: u64,
    pub v_n: u32,
    pub v_q_minus_1: u32,
    pub v_nq: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NqProfile {
    pub n: u64,
    pub q: u64,
    pub per_prime: Vec<PrimeValuation>,
    pub nq: u128,
}

impl NqProfile {
    /// `n_q <= sqrt(q)`, evaluated as `n_q^2 <= q`.
    pub fn admits_curve(&self) -> bool {
        self.nq
            .checked_mul(self.nq)
            .is_some_and(|sq| sq <= self.q as u128)
    }
}

pub fn compute_nq(n: u64, q: u64) -> Result<NqProfile> {
    if n == 0 {
        return Err(Error::param("n must be >= 1"));
    }
    if q < 2 || !numtheory::factorize(q)?.is_prime_power() {
        return Err(Error::param(format!("q = {q} is not a prime power")));
    }
    let mut per_prime = Vec::new();
    let mut nq: u128 = 1;
    for &(ell, v_n) in numtheory::factorize(n)?.factors() {
        let v_q_minus_1 = valuation(ell, q - 1);
        let v_nq = if v_q_minus_1 == 0 {
            v_n
        } else {
            (2 * v_q_minus_1 + 1).max(2 * v_n)
        };
        nq = (ell as u128)
            .checked_pow(v_nq)
            .and_then(|f| nq.checked_mul(f))
            .ok_or_else(|| Error::param(format!("n_q overflows for n = {n}, q = {q}")))?;
        per_prime.push(PrimeValuation {
            ell,
            v_n,
            v_q_minus_1,
            v_nq,
        });
    }
    Ok(NqProfile {
        n,
        q,
        per_prime,
        nq,
    })
}

/// Which algebraic group a basis would come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mechanism {
    Elliptic,
    Multiplicative,
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mechanism::Elliptic => "elliptic",
            Mechanism::Multiplicative => "multiplicative",
        })
    }
}

impl std::str::FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elliptic" => Ok(Mechanism::Elliptic),
            "multiplicative" => Ok(Mechanism::Multiplicative),
            _ => Err(Error::param(format!("unknown mechanism {s:?}"))),
        }
    }
}

/// Scheme `F_2 -> F_{2^e} -> F_{2^n}` with `d = n / e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingResult {
    pub n: u64,
    pub embed: Option<u32>,
    pub d: Option<u64>,
    pub mechanism: Mechanism,
}

fn check_emax(emax: u32) -> Result<()> {
    if (MIN_ZECH_DEGREE..=MAX_ZECH_DEGREE).contains(&emax) {
        Ok(())
    } else {
        Err(Error::param(format!(
            "emax must lie in [{MIN_ZECH_DEGREE}, {MAX_ZECH_DEGREE}], got {emax}"
        )))
    }
}

fn smallest_embedding<F>(n: u64, emax: u32, mechanism: Mechanism, accept: F) -> Result<EmbeddingResult>
where
    F: Fn(u32, u64) -> Result<bool>,
{
    check_emax(emax)?;
    for e in numtheory::divisors(n) {
        if e < 2 || e > emax as u64 {
            continue;
        }
        let d = n / e;
        if d >= 2 && accept(e as u32, d)? {
            return Ok(EmbeddingResult {
                n,
                embed: Some(e as u32),
                d: Some(d),
                mechanism,
            });
        }
    }
    Ok(EmbeddingResult {
        n,
        embed: None,
        d: None,
        mechanism,
    })
}

/// Smallest `e | n`, `2 <= e <= emax`, with `n_q(d, 2^e) <= sqrt(2^e)`.
pub fn enb_embedding_degree(n: u64, emax: u32) -> Result<EmbeddingResult> {
    smallest_embedding(n, emax, Mechanism::Elliptic, |e, d| {
        Ok(compute_nq(d, 1 << e)?.admits_curve())
    })
}

/// Smallest `e | n`, `2 <= e <= emax`, with a point of order `d = n / e` in
/// `F_{2^e}^*`, i.e. `d | 2^e - 1`.
pub fn multgroup_embedding_degree(n: u64, emax: u32) -> Result<EmbeddingResult> {
    smallest_embedding(n, emax, Mechanism::Multiplicative, |e, d| {
        Ok(pow_mod(2, e as u64, d) == 1)
    })
}

pub fn embedding_degree(n: u64, emax: u32, mechanism: Mechanism) -> Result<EmbeddingResult> {
    match mechanism {
        Mechanism::Elliptic => enb_embedding_degree(n, emax),
        Mechanism::Multiplicative => multgroup_embedding_degree(n, emax),
    }
}
