//! Word-sized integer number theory: primality, factorization, orders.
//!
//! Everything is bounded to 63-bit inputs. Quantities of the form `2^e - 1`
//! only show up for `e <= 20`; larger ones are handled through modular
//! exponentiation and never materialized.

use num_integer::Integer;

use crate::{Error, Result};

/// Largest accepted input (exclusive).
pub const LIMIT: u64 = 1 << 63;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exponent of the largest power of `p` dividing `m` (`m > 0`, `p >= 2`).
pub fn valuation(p: u64, mut m: u64) -> u32 {
    debug_assert!(p >= 2 && m > 0);
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

// First twelve primes: a complete witness set below 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if m.is_multiple_of(p) {
            return m == p;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// Product of `p^e`; equals [`Factorization::value`] by construction.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product()
    }

    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

const TRIAL_BOUND: u64 = 1 << 12;

pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 || m >= LIMIT {
        return Err(Error::param(format!("cannot factor {m}")));
    }
    let mut primes = Vec::new();
    let mut rest = m;
    for p in std::iter::once(2).chain((3..TRIAL_BOUND).step_by(2)) {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { value: m, factors })
}

fn split_large(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    let d = pollard_brent(m);
    split_large(d, out);
    split_large(m / d, out);
}

/// Brent's variant of Pollard's rho; `m` is composite with no small factors.
fn pollard_brent(m: u64) -> u64 {
    if m.is_multiple_of(2) {
        return 2;
    }
    let f = |x: u64, c: u64| (mul_mod(x, x, m) + c) % m;
    for c in 1.. {
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..r.min(128) {
                    if k >= r {
                        break;
                    }
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), m);
                    k += 1;
                }
                g = q.gcd(&m);
            }
            r *= 2;
        }
        if g == m {
            loop {
                ys = f(ys, c);
                g = x.abs_diff(ys).gcd(&m);
                if g > 1 {
                    break;
                }
            }
        }
        if g != m {
            return g;
        }
    }
    unreachable!()
}

/// Least `t >= 1` with `a^t = 1 (mod r)`.
pub fn mult_order(a: u64, r: u64) -> Result<u64> {
    if r < 2 {
        return Err(Error::param(format!("modulus {r} < 2")));
    }
    if a.gcd(&r) != 1 {
        return Err(Error::param(format!("gcd({a}, {r}) != 1")));
    }
    let group_order = if is_prime(r) {
        r - 1
    } else {
        factorize(r)?.totient()
    };
    let mut order = group_order;
    for p in factorize(group_order)?.primes() {
        while order % p == 0 && pow_mod(a, order / p, r) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// All positive divisors of `n`, ascending. `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Smallest generator of `Z_r^*` for prime `r`, trying 2, 3, 4, ... in order.
pub fn primitive_root(r: u64) -> Result<u64> {
    if !is_prime(r) {
        return Err(Error::param(format!("{r} is not prime")));
    }
    if r == 2 {
        return Ok(1);
    }
    let primes: Vec<u64> = factorize(r - 1)?.primes().collect();
    (2..r)
        .find(|&g| primes.iter().all(|&p| pow_mod(g, (r - 1) / p, r) != 1))
        .ok_or_else(|| Error::Invariant(format!("no generator mod {r}")))
}
