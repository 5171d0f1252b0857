use crate::{Error, Poly, Result};

pub const MIN_ZECH_DEGREE: u32 = 2;
/// Past this degree the tables stop being a sensible representation.
pub const MAX_ZECH_DEGREE: u32 = 20;

const NO_LOG: u32 = u32::MAX;

/// The field `F_{2^e}` backed by discrete-log / antilog tables of a primitive
/// element `g` (a root of `modulus`).
///
/// Elements are the integers `0..2^e` read as polynomials in `g`.
#[derive(Clone, Debug)]
pub struct ZechField {
    e: u32,
    modulus: Poly,
    log: Vec<u32>,
    antilog: Vec<u32>,
}

impl ZechField {
    /// Uses the lexicographically least irreducible degree-`e` polynomial
    /// whose root generates the multiplicative group.
    pub fn new(e: u32) -> Result<Self> {
        if !(MIN_ZECH_DEGREE..=MAX_ZECH_DEGREE).contains(&e) {
            return Err(Error::param(format!(
                "Zech tables need {MIN_ZECH_DEGREE} <= e <= {MAX_ZECH_DEGREE}, got {e}"
            )));
        }
        let size = 1u32 << e;
        // odd constant term, leading bit e
        for low in (1..size).step_by(2) {
            let bits = size | low;
            let modulus = Poly::from_u64(bits as u64);
            if !modulus.is_irreducible()? {
                continue;
            }
            if let Some(antilog) = power_cycle(e, bits) {
                let mut log = vec![NO_LOG; size as usize];
                for (i, &v) in antilog.iter().enumerate().take(size as usize - 1) {
                    log[v as usize] = i as u32;
                }
                return Ok(Self {
                    e,
                    modulus,
                    log,
                    antilog,
                });
            }
        }
        Err(Error::Invariant(format!("no primitive polynomial of degree {e}")))
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Number of field elements, `2^e`.
    pub fn size(&self) -> u32 {
        1 << self.e
    }

    /// Order of the multiplicative group, `2^e - 1`.
    pub fn group_order(&self) -> u32 {
        self.size() - 1
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    pub fn antilog_table(&self) -> &[u32] {
        &self.antilog
    }

    /// Discrete log base `g`; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        match self.log[a as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// `g^i`.
    pub fn exp(&self, i: u64) -> u32 {
        self.antilog[(i % self.group_order() as u64) as usize]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match (self.log(a), self.log(b)) {
            (Some(x), Some(y)) => self.exp(x as u64 + y as u64),
            _ => 0,
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        let l = self.log(a).ok_or(Error::DivisionByZero)?;
        Ok(self.exp((self.group_order() - l) as u64))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        match self.log(a) {
            None if k == 0 => 1,
            None => 0,
            Some(l) => self.exp(l as u64 * k),
        }
    }

    /// Zech logarithm: `z` with `1 + g^i = g^z`; `None` when `1 + g^i = 0`.
    pub fn zech(&self, i: u32) -> Option<u32> {
        self.log(1 ^ self.exp(i as u64))
    }

    /// Product of `g^i` and `g^j` as a log.
    pub fn mul_logs(&self, i: u32, j: u32) -> u32 {
        ((i as u64 + j as u64) % self.group_order() as u64) as u32
    }

    /// Sum `g^i + g^j` in log form via `g^i (1 + g^(j - i))`.
    pub fn add_logs(&self, i: u32, j: u32) -> Option<u32> {
        let n = self.group_order();
        let diff = (j + n - i % n) % n;
        self.zech(diff).map(|z| self.mul_logs(i, z))
    }
}

/// Successive powers of `x` modulo `bits`; `None` unless `x` has order
/// `2^e - 1`. The returned table has `2^e` entries, the last wrapping to 1.
fn power_cycle(e: u32, bits: u32) -> Option<Vec<u32>> {
    let size = 1u32 << e;
    let order = size - 1;
    let mut table = Vec::with_capacity(size as usize);
    let mut v = 1u32;
    for i in 0..order {
        if i > 0 && v == 1 {
            return None;
        }
        table.push(v);
        v <<= 1;
        if v & size != 0 {
            v ^= bits;
        }
    }
    (v == 1).then(|| {
        table.push(1);
        table
    })
}
