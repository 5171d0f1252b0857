//! Gaussian normal bases of `F_{2^n} / F_2`.
//!
//! A Gauss period of type `(n, k)` is `alpha = sum_{a in K} gamma^a` where
//! `r = nk + 1` is prime, `gamma` is a primitive `r`-th root of unity and `K`
//! is the order-`k` subgroup of `Z_r^*`. Coordinate `i` of an element is the
//! coefficient of `alpha_i = alpha^(2^i)`, which is the period over the coset
//! `2^i K`.
//!
//! Multiplication embeds both operands into `F_2[x]/(x^r - 1)` (coefficients
//! are constant on cosets), multiplies there, folds the constant term using
//! `1 + x + ... + x^(r-1) = 0`, and reads one coefficient per coset back.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::gf2x::{BitMatrix, DEFAULT_KARATSUBA_THRESHOLD};
use crate::numtheory::{self, pow_mod};
use crate::{Error, NormalityFailure, Poly, Result};

const UNUSED: u32 = u32::MAX;

/// Wasserman's condition: some Gaussian normal basis of `F_{2^n}` exists
/// iff `8` does not divide `n`.
pub fn gnb_exists(n: usize) -> bool {
    n >= 1 && !n.is_multiple_of(8)
}

/// Subgroup and coset index map when the cosets `2^i K` partition `Z_r^*`.
fn normality_certificate(
    n: usize,
    k: usize,
) -> std::result::Result<(Vec<u32>, Vec<u32>), NormalityFailure> {
    let r = (n * k + 1) as u64;
    if !numtheory::is_prime(r) {
        return Err(NormalityFailure::CompositeModulus { r });
    }
    let g = numtheory::primitive_root(r).expect("r is prime");
    let h = pow_mod(g, n as u64, r);
    let mut subgroup: Vec<u32> = std::iter::successors(Some(1u64), |&s| Some(s * h % r))
        .take(k)
        .map(|s| s as u32)
        .collect();
    subgroup.sort_unstable();

    let mut coset_index = vec![UNUSED; r as usize];
    let mut shift = 1u64;
    for i in 0..n {
        for &s in &subgroup {
            let j = (shift * s as u64 % r) as usize;
            if coset_index[j] != UNUSED {
                return Err(NormalityFailure::Partition { r });
            }
            coset_index[j] = i as u32;
        }
        shift = shift * 2 % r;
    }
    // n*k distinct residues out of r - 1 = nk: the cosets cover Z_r^*
    Ok((subgroup, coset_index))
}

/// `true` iff `r = nk + 1` is prime and the cosets `2^i K` partition `Z_r^*`.
pub fn gnb_type_ok(n: usize, k: usize) -> bool {
    n >= 2 && k >= 1 && normality_certificate(n, k).is_ok()
}

/// Number-theoretic criterion `gcd(nk / ord_r(2), n) = 1`, used as a
/// cross-check of [`gnb_type_ok`].
pub fn gnb_type_ok_fast(n: usize, k: usize) -> bool {
    let r = (n * k + 1) as u64;
    if n < 2 || k < 1 || !numtheory::is_prime(r) {
        return false;
    }
    let order = numtheory::mult_order(2, r).expect("2 is a unit mod odd prime r");
    ((n * k) as u64 / order).gcd(&(n as u64)) == 1
}

/// Smallest `k <= kmax` giving a Gaussian normal basis of `F_{2^n}`.
pub fn lowest_type(n: usize, kmax: usize) -> Option<usize> {
    if !gnb_exists(n) {
        return None;
    }
    (1..=kmax).find(|&k| gnb_type_ok(n, k))
}

/// Combinatorial description of a type-`(n, k)` Gauss period basis.
#[derive(Clone, PartialEq, Eq)]
pub struct GnbParams {
    n: usize,
    k: usize,
    r: usize,
    subgroup: Vec<u32>,
    coset_index: Vec<u32>,
}

impl GnbParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 1 {
            return Err(Error::param(format!("need n >= 2 and k >= 1, got ({n}, {k})")));
        }
        if (n as u64) * (k as u64) + 1 >= 1 << 31 {
            return Err(Error::param(format!("nk + 1 too large for ({n}, {k})")));
        }
        let (subgroup, coset_index) =
            normality_certificate(n, k).map_err(|reason| Error::NotNormalType { n, k, reason })?;
        Ok(Self {
            n,
            k,
            r: n * k + 1,
            subgroup,
            coset_index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The order-`k` subgroup `K` of `Z_r^*`, ascending.
    pub fn subgroup(&self) -> &[u32] {
        &self.subgroup
    }

    /// Coordinate owning exponent `j` in `1..r`.
    pub fn coset_of(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j < self.r);
        self.coset_index[j] as usize
    }

    /// Members of the coset `2^i K`, ascending.
    pub fn coset(&self, i: usize) -> Vec<usize> {
        (1..self.r).filter(|&j| self.coset_of(j) == i).collect()
    }
}

impl fmt::Debug for GnbParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GnbParams")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("r", &self.r)
            .field("subgroup", &self.subgroup)
            .finish()
    }
}

/// Builds shared parameters for elements to point at.
pub fn build_params(n: usize, k: usize) -> Result<Arc<GnbParams>> {
    GnbParams::new(n, k).map(Arc::new)
}

/// An element of `F_{2^n}` in Gaussian normal basis coordinates.
#[derive(Clone)]
pub struct GnbElement {
    params: Arc<GnbParams>,
    coords: Poly,
}

impl GnbElement {
    pub fn zero(params: &Arc<GnbParams>) -> Self {
        Self {
            params: params.clone(),
            coords: Poly::zero(),
        }
    }

    /// The all-ones vector, which is `sum alpha_i = 1`.
    pub fn one(params: &Arc<GnbParams>) -> Self {
        Self {
            params: params.clone(),
            coords: Poly::from_words(vec![u64::MAX; params.n.div_ceil(64)]).truncate(params.n),
        }
    }

    /// Basis vector `e_i`, the element `alpha_i`.
    pub fn basis(params: &Arc<GnbParams>, i: usize) -> Self {
        assert!(i < params.n);
        Self {
            params: params.clone(),
            coords: Poly::monomial(i),
        }
    }

    pub fn from_coords(params: &Arc<GnbParams>, coords: Poly) -> Result<Self> {
        if coords.degree().is_some_and(|d| d >= params.n) {
            return Err(Error::param(format!(
                "coordinate vector longer than n = {}",
                params.n
            )));
        }
        Ok(Self {
            params: params.clone(),
            coords,
        })
    }

    /// Takes the low `n` bits of `words`.
    pub fn from_words(params: &Arc<GnbParams>, words: Vec<u64>) -> Self {
        Self {
            params: params.clone(),
            coords: Poly::from_words(words).truncate(params.n),
        }
    }

    /// Hex string with coordinate 0 in the least significant bit.
    pub fn from_hex(params: &Arc<GnbParams>, s: &str) -> Result<Self> {
        Self::from_coords(params, Poly::from_hex(s)?)
    }

    /// Zero-padded to `ceil(n / 4)` nibbles.
    pub fn to_hex(&self) -> String {
        let width = self.params.n.div_ceil(4);
        format!("{:0>width$}", self.coords.to_hex())
    }

    pub fn params(&self) -> &Arc<GnbParams> {
        &self.params
    }

    pub fn coords(&self) -> &Poly {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> bool {
        self.coords.coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coords.weight() == self.params.n
    }

    pub fn same_field(&self, other: &GnbElement) -> bool {
        Arc::ptr_eq(&self.params, &other.params) || self.params == other.params
    }

    fn check_field(&self, other: &GnbElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::param(format!(
                "operands from different bases ({}, {}) and ({}, {})",
                self.params.n, self.params.k, other.params.n, other.params.k
            )))
        }
    }

    /// Field addition. Panics on mismatched bases.
    pub fn add(&self, other: &GnbElement) -> GnbElement {
        assert!(self.same_field(other), "adding elements of different bases");
        Self {
            params: self.params.clone(),
            coords: &self.coords + &other.coords,
        }
    }

    /// `self^(2^s)`: coordinate `i` moves to `i + s mod n`.
    pub fn frobenius(&self, s: usize) -> GnbElement {
        let n = self.params.n;
        let s = s % n;
        let hi = self.coords.shr(n - s);
        let lo = self.coords.truncate(n - s).shl(s);
        Self {
            params: self.params.clone(),
            coords: lo + &hi,
        }
    }

    /// Squaring is a cyclic shift of coordinates.
    pub fn square(&self) -> GnbElement {
        self.frobenius(1)
    }

    pub fn mul(&self, other: &GnbElement) -> Result<GnbElement> {
        gnb_mul(self, other)
    }

    pub fn inverse(&self) -> Result<GnbElement> {
        gnb_inverse(self)
    }

    pub fn pow(&self, mut exp: u64) -> Result<GnbElement> {
        let mut acc = GnbElement::one(&self.params);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.square();
            exp >>= 1;
        }
        Ok(acc)
    }
}

impl PartialEq for GnbElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for GnbElement {}

impl fmt::Debug for GnbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GnbElement(({}, {}), 0x{})",
            self.params.n,
            self.params.k,
            self.to_hex()
        )
    }
}

/// Image of `a` in `F_2[x]/(x^r - 1)`: exponent `j` carries the coordinate
/// of the coset containing `j`; the constant term is zero.
pub fn embed_phi(a: &GnbElement) -> Poly {
    let p = &a.params;
    let mut words = vec![0u64; p.r.div_ceil(64)];
    for j in 1..p.r {
        if a.coords.coeff(p.coset_index[j] as usize) {
            words[j / 64] |= 1 << (j % 64);
        }
    }
    Poly::from_words(words)
}

/// Inverse of [`embed_phi`] on its image, after constant-term folding.
pub fn project_back(p: &Poly, params: &Arc<GnbParams>) -> Result<GnbElement> {
    let r = params.r;
    if p.degree().is_some_and(|d| d >= r) {
        return Err(Error::param(format!("polynomial degree >= r = {r}")));
    }
    let c0 = p.coeff(0);
    let mut coords: Vec<Option<bool>> = vec![None; params.n];
    for j in 1..r {
        let c = p.coeff(j) ^ c0;
        let slot = &mut coords[params.coset_index[j] as usize];
        match *slot {
            None => *slot = Some(c),
            Some(prev) if prev != c => return Err(Error::NotInImage),
            Some(_) => {}
        }
    }
    let exps = coords
        .iter()
        .enumerate()
        .filter_map(|(i, c)| (*c == Some(true)).then_some(i));
    Ok(GnbElement {
        params: params.clone(),
        coords: Poly::from_exponents(exps),
    })
}

/// Product in normal basis coordinates via the cyclic embedding.
pub fn gnb_mul(a: &GnbElement, b: &GnbElement) -> Result<GnbElement> {
    gnb_mul_with(a, b, DEFAULT_KARATSUBA_THRESHOLD)
}

/// [`gnb_mul`] with an explicit Karatsuba threshold (in limbs).
pub fn gnb_mul_with(a: &GnbElement, b: &GnbElement, threshold: usize) -> Result<GnbElement> {
    a.check_field(b)?;
    let r = a.params.r;
    let prod = embed_phi(a).mulmod_cyclic_with(&embed_phi(b), r, threshold)?;
    project_back(&prod, &a.params)
}

/// `a^(2^n - 2)` by an Itoh-Tsujii chain: shifts plus `O(log n)` products.
pub fn gnb_inverse(a: &GnbElement) -> Result<GnbElement> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let m = a.params.n - 1;
    // b = a^(2^t - 1)
    let mut b = a.clone();
    let mut t = 1usize;
    for bit in (0..usize::BITS - m.leading_zeros() - 1).rev() {
        b = b.frobenius(t).mul(&b)?;
        t *= 2;
        if (m >> bit) & 1 == 1 {
            b = b.square().mul(a)?;
            t += 1;
        }
    }
    debug_assert_eq!(t, m);
    Ok(b.square())
}

/// Multiplication table: row `i` holds the coordinates of `alpha_0 * alpha_i`.
#[derive(Clone, Debug)]
pub struct MultTable {
    params: Arc<GnbParams>,
    matrix: BitMatrix,
    complexity: usize,
}

impl MultTable {
    pub fn params(&self) -> &Arc<GnbParams> {
        &self.params
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn row(&self, i: usize) -> &Poly {
        &self.matrix.rows()[i]
    }

    /// Total number of nonzero entries.
    pub fn complexity(&self) -> usize {
        self.complexity
    }

    /// `alpha * v` as a vector-matrix product against the table.
    pub fn apply(&self, v: &GnbElement) -> GnbElement {
        assert!(Arc::ptr_eq(&self.params, &v.params) || *self.params == *v.params);
        GnbElement {
            params: self.params.clone(),
            coords: self.matrix.vec_mul(&v.coords),
        }
    }
}

pub fn mult_table(params: &Arc<GnbParams>) -> Result<MultTable> {
    let a0 = GnbElement::basis(params, 0);
    let rows = (0..params.n)
        .map(|i| Ok(a0.mul(&GnbElement::basis(params, i))?.coords))
        .collect::<Result<Vec<_>>>()?;
    let matrix = BitMatrix::new(rows, params.n);
    Ok(MultTable {
        params: params.clone(),
        complexity: matrix.weight(),
        matrix,
    })
}

/// Lower and upper bounds on the table complexity of a type-`(n, k)` basis.
pub fn complexity_bounds(n: usize, k: usize) -> (i64, i64) {
    let (n, k) = (n as i64, k as i64);
    if k % 2 == 0 {
        (k * n - (k * k - 3 * k + 3), (n - 1) * k + 1)
    } else {
        ((k + 1) * n - (k * k - k + 1), (n - 2) * k + n + 1)
    }
}

/// Closed-form complexity for types `1..=6` and `n > 3`.
pub fn exact_complexity(n: usize, k: usize) -> Option<usize> {
    if n <= 3 {
        return None;
    }
    match k {
        1 | 2 => Some(2 * n - 1),
        3 | 4 => (4 * n).checked_sub(7),
        5 | 6 => (6 * n).checked_sub(21),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(params: &Arc<GnbParams>, rng: &mut ChaCha8Rng) -> GnbElement {
        let words = (0..params.n().div_ceil(64)).map(|_| rng.gen()).collect();
        GnbElement::from_words(params, words)
    }

    #[test]
    fn wasserman() {
        assert!(!gnb_exists(256));
        assert!(gnb_exists(251));
        assert!(!gnb_exists(1000));
    }

    #[test]
    fn type_examples() {
        assert!(gnb_type_ok(251, 2));
        for k in 1..=8 {
            assert!(!gnb_type_ok(250, k), "k = {k}");
        }
        assert!(gnb_type_ok(250, 9));
        assert!(gnb_type_ok(5, 2));
    }

    #[test]
    fn fast_path_agrees_with_partition() {
        for n in 2..200 {
            for k in 1..=12 {
                assert_eq!(gnb_type_ok(n, k), gnb_type_ok_fast(n, k), "({n}, {k})");
            }
        }
    }

    #[test]
    fn lowest_type_examples() {
        assert_eq!(lowest_type(253, 10), Some(10));
        assert_eq!(lowest_type(600, 10), None);
        assert_eq!(lowest_type(268, 10), Some(1));
        assert_eq!(lowest_type(256, 100), None);
    }

    #[test]
    fn params_examples() {
        let p = build_params(5, 2).unwrap();
        assert_eq!(p.subgroup(), &[1, 10]);
        assert_eq!(p.r(), 11);
        let p = build_params(4, 3).unwrap();
        assert_eq!((p.r(), p.subgroup()), (13, &[1u32, 3, 9][..]));
        match GnbParams::new(250, 8) {
            Err(Error::NotNormalType {
                reason: NormalityFailure::CompositeModulus { r: 2001 },
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        // r = 7 is prime but 2K = K for K = {1, 2, 4}
        assert!(matches!(
            GnbParams::new(2, 3),
            Err(Error::NotNormalType {
                reason: NormalityFailure::Partition { r: 7 },
                ..
            })
        ));
    }

    #[test]
    fn coset_partition_invariant() {
        for n in 2..120 {
            for k in 1..=10 {
                let Ok(p) = GnbParams::new(n, k) else { continue };
                let mut seen = vec![0usize; p.r()];
                for i in 0..n {
                    let c = p.coset(i);
                    assert_eq!(c.len(), k);
                    for j in c {
                        seen[j] += 1;
                    }
                }
                assert!(seen[1..].iter().all(|&s| s == 1));
                for &a in p.subgroup() {
                    for &b in p.subgroup() {
                        let prod = a as usize * b as usize % p.r();
                        assert!(p.subgroup().contains(&(prod as u32)));
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let p = build_params(5, 2).unwrap();
        assert!(embed_phi(&GnbElement::zero(&p)).is_zero());
        assert_eq!(
            embed_phi(&GnbElement::basis(&p, 0)),
            Poly::from_exponents([1, 10])
        );
        assert_eq!(
            embed_phi(&GnbElement::one(&p)),
            Poly::from_exponents(1..=10)
        );
    }

    #[test]
    fn projection_examples() {
        let p = build_params(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random(&p, &mut rng);
            assert_eq!(project_back(&embed_phi(&a), &p).unwrap(), a);
        }
        assert!(project_back(&Poly::one(), &p).unwrap().is_one());
        // exponents 1 and 2 sit in different cosets, but 10 (coset of 1) is 0
        assert_eq!(
            project_back(&Poly::from_exponents([1, 2]), &p),
            Err(Error::NotInImage)
        );
    }

    #[test]
    fn multiplication_examples() {
        let p = build_params(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let one = GnbElement::one(&p);
        for _ in 0..50 {
            let b = random(&p, &mut rng);
            assert_eq!(one.mul(&b).unwrap(), b);
            assert_eq!(b.mul(&b).unwrap(), b.square());
        }
        let e0 = GnbElement::basis(&p, 0);
        assert_eq!(e0.mul(&e0).unwrap(), GnbElement::basis(&p, 1));
        let q = build_params(6, 3).unwrap();
        assert!(e0.mul(&GnbElement::one(&q)).is_err());
    }

    #[test]
    fn inverse_examples() {
        let p = build_params(5, 2).unwrap();
        let one = GnbElement::one(&p);
        assert_eq!(one.inverse().unwrap(), one);
        let e0 = GnbElement::basis(&p, 0);
        assert!(e0.inverse().unwrap().mul(&e0).unwrap().is_one());
        assert_eq!(GnbElement::zero(&p).inverse(), Err(Error::DivisionByZero));
        for (n, k) in [(2, 1), (3, 2), (4, 1), (6, 3), (12, 5), (30, 2)] {
            let Ok(p) = build_params(n, k) else { continue };
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..20 {
                let a = random(&p, &mut rng);
                if a.is_zero() {
                    continue;
                }
                let inv = a.inverse().unwrap();
                assert!(inv.mul(&a).unwrap().is_one());
                assert_eq!(inv.inverse().unwrap(), a);
            }
        }
    }

    #[test]
    fn table_complexity_examples() {
        assert_eq!(mult_table(&build_params(5, 2).unwrap()).unwrap().complexity(), 9);
        assert_eq!(mult_table(&build_params(6, 3).unwrap()).unwrap().complexity(), 17);
        assert_eq!(mult_table(&build_params(12, 5).unwrap()).unwrap().complexity(), 51);
    }

    #[test]
    fn table_application_is_multiplication_by_alpha() {
        let p = build_params(12, 5).unwrap();
        let t = mult_table(&p).unwrap();
        let a0 = GnbElement::basis(&p, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let v = random(&p, &mut rng);
            assert_eq!(t.apply(&v), a0.mul(&v).unwrap());
        }
    }

    #[test]
    fn hex_io() {
        let p = build_params(5, 2).unwrap();
        let e1 = GnbElement::basis(&p, 1);
        assert_eq!(e1.to_hex(), "02");
        assert_eq!(GnbElement::from_hex(&p, "1f").unwrap(), GnbElement::one(&p));
        assert!(GnbElement::from_hex(&p, "20").is_err());
    }
}
