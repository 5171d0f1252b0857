use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use super::Limb;
use crate::numtheory;
use crate::{Error, Result};

/// Karatsuba recursion stops below this many limbs.
pub const DEFAULT_KARATSUBA_THRESHOLD: usize = 8;

/// A polynomial over GF(2), coefficients packed least significant bit first.
///
/// The limb vector never carries trailing zero limbs, so the zero polynomial
/// has an empty support and `degree()` returns `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial<W: Limb = u64> {
    words: Vec<W>,
}

impl<W: Limb> BinaryPolynomial<W> {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(exp, true);
        p
    }

    pub fn from_words(words: Vec<W>) -> Self {
        let mut p = Self { words };
        p.normalize();
        p
    }

    /// Builds a polynomial from its set exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip_coeff(e);
        }
        p
    }

    /// Interprets the bits of `v` as coefficients.
    pub fn from_u64(v: u64) -> Self {
        Self::from_exponents((0..64).filter(|&i| (v >> i) & 1 == 1))
    }

    /// Coefficients of degree < 64 as an integer.
    pub fn low_u64(&self) -> u64 {
        (0..64.min(self.bit_len()))
            .filter(|&i| self.coeff(i))
            .fold(0, |acc, i| acc | 1 << i)
    }

    pub fn words(&self) -> &[W] {
        &self.words
    }

    fn normalize(&mut self) {
        while self.words.last().is_some_and(|w| w.is_zero()) {
            self.words.pop();
        }
    }

    fn bit_len(&self) -> usize {
        self.words.len() * W::BITS
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = self.words.last()?;
        let lead = W::BITS - 1 - top.leading_zeros() as usize;
        Some((self.words.len() - 1) * W::BITS + lead)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == W::one()
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / W::BITS)
            .is_some_and(|w| w.bit(i % W::BITS))
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if self.coeff(i) != value {
            self.flip_coeff(i);
        }
    }

    pub fn flip_coeff(&mut self, i: usize) {
        let w = i / W::BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, W::zero());
        }
        self.words[w] = self.words[w] ^ (W::one() << (i % W::BITS));
        self.normalize();
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Set exponents in increasing order.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..W::BITS)
                .filter(move |&b| w.bit(b))
                .map(move |b| wi * W::BITS + b)
        })
    }

    /// Multiplication by `x^shift`.
    pub fn shl(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (shift / W::BITS, shift % W::BITS);
        let mut out = vec![W::zero(); self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            out[i + ws] = out[i + ws] ^ (w << bs);
            if bs > 0 {
                out[i + ws + 1] = out[i + ws + 1] ^ (w >> (W::BITS - bs));
            }
        }
        Self::from_words(out)
    }

    /// Division by `x^shift`, discarding the remainder.
    pub fn shr(&self, shift: usize) -> Self {
        let (ws, bs) = (shift / W::BITS, shift % W::BITS);
        if ws >= self.words.len() {
            return Self::zero();
        }
        let src = &self.words[ws..];
        let out = (0..src.len())
            .map(|i| {
                let mut w = src[i] >> bs;
                if bs > 0 {
                    if let Some(&next) = src.get(i + 1) {
                        w = w ^ (next << (W::BITS - bs));
                    }
                }
                w
            })
            .collect();
        Self::from_words(out)
    }

    /// Keeps the coefficients of degree `< len`.
    pub fn truncate(&self, len: usize) -> Self {
        let (ws, bs) = (len / W::BITS, len % W::BITS);
        let mut words: Vec<W> = self.words.iter().take(ws + 1).copied().collect();
        if words.len() == ws + 1 {
            words[ws] = if bs == 0 {
                W::zero()
            } else {
                words[ws] & ((W::one() << bs) - W::one())
            };
        }
        Self::from_words(words)
    }

    fn xor_words(&mut self, other: &[W]) {
        if other.len() > self.words.len() {
            self.words.resize(other.len(), W::zero());
        }
        for (a, &b) in self.words.iter_mut().zip(other) {
            *a = *a ^ b;
        }
        self.normalize();
    }

    /// Quadratic product, limb by limb.
    pub fn mul_schoolbook(&self, rhs: &Self) -> Self {
        Self::from_words(schoolbook(&self.words, &rhs.words))
    }

    /// Karatsuba product; operands of at most `threshold` limbs use the
    /// schoolbook kernel. A `threshold` of zero is treated as one.
    pub fn mul_karatsuba(&self, rhs: &Self, threshold: usize) -> Self {
        Self::from_words(karatsuba(&self.words, &rhs.words, threshold.max(1)))
    }

    pub fn square(&self) -> Self {
        let mut p = Self::zero();
        for e in self.exponents() {
            p.flip_coeff(2 * e);
        }
        p
    }

    /// `a * b mod (x^r - 1)`: the exponent `i + j` folds onto `(i + j) mod r`.
    pub fn mulmod_cyclic(&self, rhs: &Self, r: usize) -> Result<Self> {
        self.mulmod_cyclic_with(rhs, r, DEFAULT_KARATSUBA_THRESHOLD)
    }

    pub fn mulmod_cyclic_with(&self, rhs: &Self, r: usize, threshold: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::param("cyclic modulus r must be >= 1"));
        }
        for p in [self, rhs] {
            if p.degree().is_some_and(|d| d >= r) {
                return Err(Error::param(format!("operand degree >= r = {r}")));
            }
        }
        let full = self.mul_karatsuba(rhs, threshold);
        // deg full <= 2r - 2, so a single fold suffices
        let mut out = full.truncate(r);
        out += &full.shr(r);
        Ok(out)
    }

    /// Remainder of division by `modulus`.
    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        let dm = modulus
            .degree()
            .ok_or_else(|| Error::param("zero modulus"))?;
        let mut r = self.clone();
        while let Some(d) = r.degree() {
            if d < dm {
                break;
            }
            let shifted = modulus.shl(d - dm);
            r.xor_words(&shifted.words);
        }
        Ok(r)
    }

    pub fn mulmod(&self, rhs: &Self, modulus: &Self) -> Result<Self> {
        (self * rhs).rem(modulus)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn modpow(&self, mut exp: u64, modulus: &Self) -> Result<Self> {
        if modulus.degree().is_none_or(|d| d < 1) {
            return Err(Error::param("modulus must have degree >= 1"));
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            base = base.square().rem(modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// `self^(2^k) mod modulus` by `k` squarings.
    pub fn pow_2k_mod(&self, k: usize, modulus: &Self) -> Result<Self> {
        let mut acc = self.rem(modulus)?;
        for _ in 0..k {
            acc = acc.square().rem(modulus)?;
        }
        Ok(acc)
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `x^(2^d) = x mod f` and `gcd(x^(2^(d/p)) - x, f) = 1`
    /// for every prime `p | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::param("constant polynomial has no irreducibility")),
        };
        let x = Self::x();
        if x.pow_2k_mod(d, self)? != x.rem(self)? {
            return Ok(false);
        }
        for p in numtheory::factorize(d as u64)?.primes() {
            let h = x.pow_2k_mod(d / p as usize, self)? + &x;
            if !h.gcd(self).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lowercase hex of the packed coefficients; `"b"` is `x^3 + x + 1`.
    pub fn to_hex(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0".to_string();
        };
        (0..=deg / 4)
            .rev()
            .map(|nib| {
                let v = (0..4)
                    .filter(|&b| self.coeff(4 * nib + b))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = s.strip_prefix("0x").unwrap_or(s);
        if digits.is_empty() {
            return Err(Error::Format("empty hex string".into()));
        }
        let mut p = Self::zero();
        for (nib, c) in digits.chars().rev().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Format(format!("invalid hex digit {c:?} in {s:?}")))?;
            for b in 0..4 {
                if (v >> b) & 1 == 1 {
                    p.flip_coeff(4 * nib + b);
                }
            }
        }
        Ok(p)
    }
}

fn schoolbook<W: Limb>(a: &[W], b: &[W]) -> Vec<W> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![W::zero(); a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let (lo, hi) = x.clmul(y);
            out[i + j] = out[i + j] ^ lo;
            out[i + j + 1] = out[i + j + 1] ^ hi;
        }
    }
    out
}

fn xor_into<W: Limb>(dst: &mut [W], src: &[W]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = *d ^ s;
    }
}

fn karatsuba<W: Limb>(a: &[W], b: &[W], threshold: usize) -> Vec<W> {
    if a.len().min(b.len()) <= threshold {
        return schoolbook(a, b);
    }
    let n = a.len().max(b.len());
    let h = n.div_ceil(2);
    let split = |v: &[W]| -> (Vec<W>, Vec<W>) {
        let mut lo = vec![W::zero(); h];
        let mut hi = vec![W::zero(); h];
        for (i, &w) in v.iter().enumerate() {
            if i < h {
                lo[i] = w;
            } else {
                hi[i - h] = w;
            }
        }
        (lo, hi)
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let p0 = karatsuba(&a0, &b0, threshold);
    let p2 = karatsuba(&a1, &b1, threshold);
    let mut sa = a0;
    xor_into(&mut sa, &a1);
    let mut sb = b0;
    xor_into(&mut sb, &b1);
    let mut p1 = karatsuba(&sa, &sb, threshold);
    xor_into(&mut p1, &p0);
    xor_into(&mut p1, &p2);

    let mut out = vec![W::zero(); 4 * h];
    xor_into(&mut out, &p0);
    xor_into(&mut out[h..], &p1);
    xor_into(&mut out[2 * h..], &p2);
    out.truncate(a.len() + b.len());
    out
}

impl<W: Limb> Add<&BinaryPolynomial<W>> for &BinaryPolynomial<W> {
    type Output = BinaryPolynomial<W>;

    fn add(self, rhs: &BinaryPolynomial<W>) -> BinaryPolynomial<W> {
        let mut out = self.clone();
        out.xor_words(&rhs.words);
        out
    }
}

impl<W: Limb> Add<&BinaryPolynomial<W>> for BinaryPolynomial<W> {
    type Output = BinaryPolynomial<W>;

    fn add(mut self, rhs: &BinaryPolynomial<W>) -> BinaryPolynomial<W> {
        self.xor_words(&rhs.words);
        self
    }
}

impl<W: Limb> AddAssign<&BinaryPolynomial<W>> for BinaryPolynomial<W> {
    fn add_assign(&mut self, rhs: &BinaryPolynomial<W>) {
        self.xor_words(&rhs.words);
    }
}

impl<W: Limb> Mul<&BinaryPolynomial<W>> for &BinaryPolynomial<W> {
    type Output = BinaryPolynomial<W>;

    fn mul(self, rhs: &BinaryPolynomial<W>) -> BinaryPolynomial<W> {
        self.mul_karatsuba(rhs, DEFAULT_KARATSUBA_THRESHOLD)
    }
}

impl<W: Limb> FromStr for BinaryPolynomial<W> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}

impl<W: Limb> fmt::Debug for BinaryPolynomial<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial(0x{})", self.to_hex())
    }
}

impl<W: Limb> fmt::Display for BinaryPolynomial<W> {
    /// Human-readable form, highest degree first: `x^3 + x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        let terms: Vec<String> = exps
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use crate::{Poly, Poly8};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(exps: &[usize]) -> Poly {
        Poly::from_exponents(exps.iter().copied())
    }

    /// Coefficient convolution on plain bit vectors.
    fn convolution_oracle(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in a.exponents() {
            for j in b.exponents() {
                out.flip_coeff(i + j);
            }
        }
        out
    }

    fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
        let mut q = Poly::from_words((0..deg / 64 + 1).map(|_| rng.gen()).collect());
        q = q.truncate(deg + 1);
        q.set_coeff(deg, true);
        q
    }

    #[test]
    fn degree_and_zero_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(p(&[200, 3]).degree(), Some(200));
        let mut q = p(&[70]);
        q.flip_coeff(70);
        assert!(q.is_zero());
        assert!(q.words().is_empty());
    }

    #[test]
    fn schoolbook_examples() {
        assert_eq!(p(&[1, 0]).mul_schoolbook(&p(&[1, 0])), p(&[2, 0]));
        assert!(p(&[5, 1]).mul_schoolbook(&Poly::zero()).is_zero());
        let a = p(&[3, 1, 0]);
        let b = p(&[2, 1]);
        assert_eq!(a.mul_schoolbook(&b), convolution_oracle(&a, &b));
        assert_eq!(a.mul_schoolbook(&b), p(&[5, 4, 3, 1]));
    }

    #[test]
    fn karatsuba_examples() {
        assert_eq!(p(&[1, 0]).mul_karatsuba(&p(&[1, 0]), 1), p(&[2, 0]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_poly(&mut rng, 1000);
        let b = random_poly(&mut rng, 1000);
        let expect = convolution_oracle(&a, &b);
        assert_eq!(a.mul_schoolbook(&b), expect);
        for t in [1, 2, 3, 8, 100] {
            assert_eq!(a.mul_karatsuba(&b, t), expect);
        }
        // unbalanced operands
        let c = random_poly(&mut rng, 3000);
        assert_eq!(a.mul_karatsuba(&c, 1), convolution_oracle(&a, &c));
    }

    #[test]
    fn cyclic_examples() {
        assert!(p(&[10]).mulmod_cyclic(&p(&[1]), 11).unwrap().is_one());
        let a = p(&[0, 4, 7]);
        assert_eq!(a.mulmod_cyclic(&Poly::one(), 11).unwrap(), a);
        assert_eq!(
            p(&[1, 2]).mulmod_cyclic(&p(&[1, 2]), 5).unwrap(),
            p(&[2, 4])
        );
        assert!(a.mulmod_cyclic(&a, 0).is_err());
        assert!(a.mulmod_cyclic(&a, 7).is_err());
    }

    #[test]
    fn modpow_examples() {
        let m = p(&[3, 1, 0]);
        let a = p(&[2, 0]);
        assert!(a.modpow(0, &m).unwrap().is_one());
        assert_eq!(a.modpow(1, &m).unwrap(), a);
        assert_eq!(Poly::x().modpow(8, &m).unwrap(), p(&[1]));
        assert_eq!(p(&[4]).modpow(1, &m).unwrap(), p(&[2, 1]));
        assert!(a.modpow(3, &Poly::zero()).is_err());
        assert!(a.modpow(3, &Poly::one()).is_err());
    }

    /// Trial division by every polynomial of degree 1..=deg/2.
    fn irreducible_by_trial(f: &Poly) -> bool {
        let d = f.degree().unwrap();
        (2u64..1 << (d / 2 + 1)).all(|g| !f.rem(&Poly::from_u64(g)).unwrap().is_zero())
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p(&[2, 1, 0]).is_irreducible().unwrap());
        assert!(!p(&[2, 0]).is_irreducible().unwrap());
        assert!(p(&[5, 2, 0]).is_irreducible().unwrap());
        assert!(irreducible_by_trial(&p(&[5, 2, 0])));
        assert!(Poly::one().is_irreducible().is_err());
        assert!(Poly::zero().is_irreducible().is_err());
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for v in 2u64..1 << 11 {
            let f = Poly::from_u64(v);
            assert_eq!(f.is_irreducible().unwrap(), irreducible_by_trial(&f), "{f}");
        }
    }

    #[test]
    fn hex_format() {
        assert_eq!(Poly::from_hex("b").unwrap(), p(&[3, 1, 0]));
        assert_eq!(p(&[3, 1, 0]).to_hex(), "b");
        assert_eq!(p(&[4]).to_hex(), "10");
        assert_eq!(Poly::zero().to_hex(), "0");
        assert!(Poly::from_hex("xyz").is_err());
        assert!(Poly::from_hex("").is_err());
        assert_eq!(p(&[3, 1, 0]).to_string(), "x^3 + x + 1");
    }

    #[test]
    fn limb_width_does_not_change_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = random_poly(&mut rng, 300);
            let b = random_poly(&mut rng, 170);
            let a8 = Poly8::from_hex(&a.to_hex()).unwrap();
            let b8 = Poly8::from_hex(&b.to_hex()).unwrap();
            assert_eq!(a8.mul_karatsuba(&b8, 2).to_hex(), (&a * &b).to_hex());
        }
    }

    proptest! {
        #[test]
        fn char_two_self_sum_vanishes(words in prop::collection::vec(any::<u64>(), 0..20)) {
            let a = Poly::from_words(words);
            prop_assert!((&a + &a).is_zero());
        }

        #[test]
        fn hex_roundtrip(words in prop::collection::vec(any::<u64>(), 0..6)) {
            let a = Poly::from_words(words);
            prop_assert_eq!(Poly::from_hex(&a.to_hex()).unwrap(), a);
        }

        #[test]
        fn shifts_invert(words in prop::collection::vec(any::<u64>(), 0..6), s in 0usize..300) {
            let a = Poly::from_words(words);
            prop_assert_eq!(a.shl(s).shr(s), a.clone());
            prop_assert_eq!(a.shl(s), &a * &Poly::monomial(s));
        }
    }
}
