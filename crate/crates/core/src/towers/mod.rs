//! Extensions of a Gaussian normal basis `N` of `F_{2^d}`.
//!
//! * `As2`: `F_{2^{2d}} = F_{2^d}(a)` with `a^2 + a = alpha`, basis `N ∪ aN`.
//! * `Witt4`: a second Artin-Schreier step `b^2 + b = c2` on top of `As2`,
//!   basis `N ∪ aN ∪ bN ∪ abN`. `c2 = a` for odd `d`, `c2 = alpha * a`
//!   otherwise; both have absolute trace 1.
//! * `Kummer3`: `F_{2^{3d}} = F_{2^d}(beta)` with `beta^3 = alpha`, basis
//!   `N ∪ betaN ∪ beta^2 N`, available when `d` is even and `alpha` is not a
//!   cube.
//!
//! Every product by `alpha` is a vector-matrix product against the
//! multiplication table of `N`. Each multiplication reports how many subfield
//! products, table applications and subfield additions it used.

mod oracle;

use std::fmt;
use std::sync::Arc;

use crate::gauss::{mult_table, GnbElement, GnbParams, MultTable};
use crate::{Error, Result};

pub use oracle::{gamma_expansion_table, minpoly_gauss_period, oracle_mul, OracleTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TowerForm {
    As2,
    Witt4,
    Kummer3,
}

impl TowerForm {
    /// Number of subfield blocks per element.
    pub fn blocks(self) -> usize {
        match self {
            TowerForm::As2 => 2,
            TowerForm::Witt4 => 4,
            TowerForm::Kummer3 => 3,
        }
    }
}

impl fmt::Display for TowerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerForm::As2 => "as2",
            TowerForm::Witt4 => "witt4",
            TowerForm::Kummer3 => "kummer3",
        })
    }
}

impl std::str::FromStr for TowerForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as2" => Ok(TowerForm::As2),
            "witt4" => Ok(TowerForm::Witt4),
            "kummer3" => Ok(TowerForm::Kummer3),
            _ => Err(Error::param(format!("unknown tower form {s:?}"))),
        }
    }
}

/// Constant of the second Artin-Schreier step, `b^2 + b = c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittConstant {
    /// `c2 = a`, trace `d mod 2`.
    A,
    /// `c2 = alpha * a`, trace 1 for every `d`.
    AlphaA,
}

/// Operation counts of one tower multiplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mults: usize,
    pub table_apps: usize,
    pub additions: usize,
}

#[derive(Clone, Debug)]
pub struct TowerParams {
    base: Arc<GnbParams>,
    form: TowerForm,
    table: MultTable,
    witt_constant: Option<WittConstant>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TowerElement {
    form: TowerForm,
    blocks: Vec<GnbElement>,
}

impl TowerElement {
    pub fn form(&self) -> TowerForm {
        self.form
    }

    pub fn blocks(&self) -> &[GnbElement] {
        &self.blocks
    }

    pub fn add(&self, other: &TowerElement) -> TowerElement {
        assert_eq!(self.form, other.form);
        TowerElement {
            form: self.form,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Comma-separated block hex strings, block 0 first.
    pub fn to_hex(&self) -> String {
        self.blocks
            .iter()
            .map(GnbElement::to_hex)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElement({}, [{}])", self.form, self.to_hex())
    }
}

fn new_params(base: &Arc<GnbParams>, form: TowerForm) -> Result<TowerParams> {
    Ok(TowerParams {
        base: base.clone(),
        form,
        table: mult_table(base)?,
        witt_constant: None,
    })
}

/// Degree-2 Artin-Schreier extension with `a^2 = a + alpha`.
pub fn build_as2(base: &Arc<GnbParams>) -> Result<TowerParams> {
    // Tr(alpha) is the all-ones vector, i.e. 1
    new_params(base, TowerForm::As2)
}

/// Degree-4 Artin-Schreier-Witt tower `F_{2^d} ⊂ F_{2^{2d}} ⊂ F_{2^{4d}}`.
pub fn build_witt4(base: &Arc<GnbParams>) -> Result<TowerParams> {
    let mut tower = new_params(base, TowerForm::Witt4)?;
    let constant = if base.n() % 2 == 1 {
        WittConstant::A
    } else {
        WittConstant::AlphaA
    };
    tower.witt_constant = Some(constant);
    let c2 = tower.witt_c2_pair();
    let trace = tower.as2_absolute_trace(&c2);
    if !(trace.0.is_one() && trace.1.is_zero()) {
        return Err(Error::Invariant(format!(
            "absolute trace of c2 = {constant:?} is not 1"
        )));
    }
    Ok(tower)
}

/// Degree-3 Kummer extension `beta^3 = alpha`.
pub fn build_kummer3(base: &Arc<GnbParams>) -> Result<TowerParams> {
    let d = base.n();
    if d % 2 == 1 {
        return Err(Error::KummerUnavailable { d });
    }
    // (2^d - 1) / 3 = sum_{i < d/2} 4^i, so alpha^((2^d-1)/3) = prod alpha^(4^i)
    let alpha = GnbElement::basis(base, 0);
    let mut power = alpha.clone();
    for i in 1..d / 2 {
        power = power.mul(&alpha.frobenius(2 * i))?;
    }
    if power.is_one() {
        return Err(Error::CubeElement);
    }
    new_params(base, TowerForm::Kummer3)
}

pub fn build(base: &Arc<GnbParams>, form: TowerForm) -> Result<TowerParams> {
    match form {
        TowerForm::As2 => build_as2(base),
        TowerForm::Witt4 => build_witt4(base),
        TowerForm::Kummer3 => build_kummer3(base),
    }
}

type Pair = (GnbElement, GnbElement);

impl TowerParams {
    pub fn base(&self) -> &Arc<GnbParams> {
        &self.base
    }

    pub fn form(&self) -> TowerForm {
        self.form
    }

    pub fn table(&self) -> &MultTable {
        &self.table
    }

    pub fn witt_constant(&self) -> Option<WittConstant> {
        self.witt_constant
    }

    /// The normal element `alpha = alpha_0` of the base.
    pub fn alpha(&self) -> GnbElement {
        GnbElement::basis(&self.base, 0)
    }

    pub fn element(&self, blocks: Vec<GnbElement>) -> Result<TowerElement> {
        if blocks.len() != self.form.blocks() {
            return Err(Error::param(format!(
                "{} needs {} blocks, got {}",
                self.form,
                self.form.blocks(),
                blocks.len()
            )));
        }
        if let Some(b) = blocks.iter().find(|b| **b.params() != *self.base) {
            return Err(Error::param(format!(
                "block from basis ({}, {}) in a tower over ({}, {})",
                b.params().n(),
                b.params().k(),
                self.base.n(),
                self.base.k()
            )));
        }
        Ok(TowerElement {
            form: self.form,
            blocks,
        })
    }

    /// Parses comma-separated block hex strings.
    pub fn parse(&self, s: &str) -> Result<TowerElement> {
        let blocks = s
            .split(',')
            .map(|h| GnbElement::from_hex(&self.base, h))
            .collect::<Result<Vec<_>>>()?;
        self.element(blocks)
    }

    /// Element with block `i` set to `value` and the others zero.
    pub fn monomial(&self, i: usize, value: GnbElement) -> TowerElement {
        let mut blocks = vec![GnbElement::zero(&self.base); self.form.blocks()];
        blocks[i] = value;
        TowerElement {
            form: self.form,
            blocks,
        }
    }

    pub fn zero(&self) -> TowerElement {
        self.monomial(0, GnbElement::zero(&self.base))
    }

    pub fn one(&self) -> TowerElement {
        self.monomial(0, GnbElement::one(&self.base))
    }

    /// The adjoined generator: `a` for `As2`, `b` for `Witt4`, `beta` for
    /// `Kummer3`.
    pub fn generator(&self) -> TowerElement {
        let one = GnbElement::one(&self.base);
        match self.form {
            TowerForm::As2 | TowerForm::Kummer3 => self.monomial(1, one),
            TowerForm::Witt4 => self.monomial(2, one),
        }
    }

    /// `a` inside a `Witt4` tower.
    pub fn witt_a(&self) -> TowerElement {
        self.monomial(1, GnbElement::one(&self.base))
    }

    /// `c2` as a `Witt4` element (`None` for other forms).
    pub fn witt_c2(&self) -> Option<TowerElement> {
        self.witt_constant?;
        let (c0, c1) = self.witt_c2_pair();
        let z = GnbElement::zero(&self.base);
        Some(TowerElement {
            form: TowerForm::Witt4,
            blocks: vec![c0, c1, z.clone(), z],
        })
    }

    fn witt_c2_pair(&self) -> Pair {
        let z = GnbElement::zero(&self.base);
        match self.witt_constant {
            Some(WittConstant::AlphaA) => (z, self.alpha()),
            _ => (z, GnbElement::one(&self.base)),
        }
    }

    fn check(&self, x: &TowerElement, form: TowerForm) -> Result<()> {
        if x.form != form || self.form != form {
            return Err(Error::param(format!(
                "expected {form} elements in a {} tower, got {}",
                self.form, x.form
            )));
        }
        if x.blocks.iter().any(|b| **b.params() != *self.base) {
            return Err(Error::param("element from a different base field"));
        }
        Ok(())
    }

    fn sub_mul(&self, x: &GnbElement, y: &GnbElement, c: &mut OpCounts) -> Result<GnbElement> {
        c.mults += 1;
        x.mul(y)
    }

    fn sub_add(&self, x: &GnbElement, y: &GnbElement, c: &mut OpCounts) -> GnbElement {
        c.additions += 1;
        x.add(y)
    }

    fn times_alpha(&self, x: &GnbElement, c: &mut OpCounts) -> GnbElement {
        c.table_apps += 1;
        self.table.apply(x)
    }

    fn pair_add(&self, x: &Pair, y: &Pair, c: &mut OpCounts) -> Pair {
        (self.sub_add(&x.0, &y.0, c), self.sub_add(&x.1, &y.1, c))
    }

    /// `(X0 + a X1)(Y0 + a Y1)` with three subfield products.
    fn pair_mul(&self, x: &Pair, y: &Pair, c: &mut OpCounts) -> Result<Pair> {
        let p1 = self.sub_mul(&x.0, &y.0, c)?;
        let p2 = self.sub_mul(&x.1, &y.1, c)?;
        let sx = self.sub_add(&x.0, &x.1, c);
        let sy = self.sub_add(&y.0, &y.1, c);
        let p3 = self.sub_mul(&sx, &sy, c)?;
        let alpha_p2 = self.times_alpha(&p2, c);
        // a^2 = a + alpha: X1 Y1 a^2 = alpha P2 + a P2, and
        // X0 Y1 + X1 Y0 + X1 Y1 = P3 + P1
        Ok((self.sub_add(&p1, &alpha_p2, c), self.sub_add(&p3, &p1, c)))
    }

    /// `a (Z0 + a Z1) = alpha Z1 + a (Z0 + Z1)`.
    fn pair_times_a(&self, z: &Pair, c: &mut OpCounts) -> Pair {
        (self.times_alpha(&z.1, c), self.sub_add(&z.0, &z.1, c))
    }

    fn pair_times_c2(&self, z: &Pair, c: &mut OpCounts) -> Pair {
        let az = self.pair_times_a(z, c);
        match self.witt_constant {
            Some(WittConstant::AlphaA) => (self.times_alpha(&az.0, c), self.times_alpha(&az.1, c)),
            _ => az,
        }
    }

    /// `(X0 + a X1)^2 = (X0^2 + alpha X1^2) + a X1^2`, one table application.
    fn pair_square(&self, x: &Pair) -> Pair {
        let s1 = x.1.square();
        (x.0.square().add(&self.table.apply(&s1)), s1)
    }

    /// `sum_{i < 2d} x^(2^i)`, an element of `F_2` embedded as a pair.
    fn as2_absolute_trace(&self, x: &Pair) -> Pair {
        let mut acc = x.clone();
        let mut pow = x.clone();
        for _ in 1..2 * self.base.n() {
            pow = self.pair_square(&pow);
            acc = (acc.0.add(&pow.0), acc.1.add(&pow.1));
        }
        acc
    }

    pub fn mul(&self, x: &TowerElement, y: &TowerElement) -> Result<(TowerElement, OpCounts)> {
        match self.form {
            TowerForm::As2 => as2_mul(self, x, y),
            TowerForm::Witt4 => witt4_mul(self, x, y),
            TowerForm::Kummer3 => kummer3_mul(self, x, y),
        }
    }
}

pub fn as2_mul(
    tower: &TowerParams,
    x: &TowerElement,
    y: &TowerElement,
) -> Result<(TowerElement, OpCounts)> {
    tower.check(x, TowerForm::As2)?;
    tower.check(y, TowerForm::As2)?;
    let mut c = OpCounts::default();
    let xp = (x.blocks[0].clone(), x.blocks[1].clone());
    let yp = (y.blocks[0].clone(), y.blocks[1].clone());
    let (r0, r1) = tower.pair_mul(&xp, &yp, &mut c)?;
    Ok((
        TowerElement {
            form: TowerForm::As2,
            blocks: vec![r0, r1],
        },
        c,
    ))
}

/// Karatsuba over the `As2` level, then `b^2 = b + c2`.
pub fn witt4_mul(
    tower: &TowerParams,
    x: &TowerElement,
    y: &TowerElement,
) -> Result<(TowerElement, OpCounts)> {
    tower.check(x, TowerForm::Witt4)?;
    tower.check(y, TowerForm::Witt4)?;
    let mut c = OpCounts::default();
    let split = |e: &TowerElement| -> (Pair, Pair) {
        let b = &e.blocks;
        ((b[0].clone(), b[1].clone()), (b[2].clone(), b[3].clone()))
    };
    let (u0, u1) = split(x);
    let (v0, v1) = split(y);
    let q1 = tower.pair_mul(&u0, &v0, &mut c)?;
    let q2 = tower.pair_mul(&u1, &v1, &mut c)?;
    let su = tower.pair_add(&u0, &u1, &mut c);
    let sv = tower.pair_add(&v0, &v1, &mut c);
    let q3 = tower.pair_mul(&su, &sv, &mut c)?;
    let c2q2 = tower.pair_times_c2(&q2, &mut c);
    let r0 = tower.pair_add(&q1, &c2q2, &mut c);
    let r1 = tower.pair_add(&q3, &q1, &mut c);
    Ok((
        TowerElement {
            form: TowerForm::Witt4,
            blocks: vec![r0.0, r0.1, r1.0, r1.1],
        },
        c,
    ))
}

/// Degree-2 convolution with `beta^3 = alpha`; six products, two table
/// applications.
pub fn kummer3_mul(
    tower: &TowerParams,
    x: &TowerElement,
    y: &TowerElement,
) -> Result<(TowerElement, OpCounts)> {
    tower.check(x, TowerForm::Kummer3)?;
    tower.check(y, TowerForm::Kummer3)?;
    let mut c = OpCounts::default();
    let (xb, yb) = (&x.blocks, &y.blocks);
    let p00 = tower.sub_mul(&xb[0], &yb[0], &mut c)?;
    let p11 = tower.sub_mul(&xb[1], &yb[1], &mut c)?;
    let p22 = tower.sub_mul(&xb[2], &yb[2], &mut c)?;
    let cross = |i: usize, j: usize, c: &mut OpCounts| -> Result<GnbElement> {
        let sx = tower.sub_add(&xb[i], &xb[j], c);
        let sy = tower.sub_add(&yb[i], &yb[j], c);
        tower.sub_mul(&sx, &sy, c)
    };
    let p01 = cross(0, 1, &mut c)?;
    let p02 = cross(0, 2, &mut c)?;
    let p12 = cross(1, 2, &mut c)?;

    // X1 Y2 + X2 Y1 = P12 + P11 + P22
    let t = tower.sub_add(&p12, &p11, &mut c);
    let t = tower.sub_add(&t, &p22, &mut c);
    let c0 = tower.sub_add(&p00, &tower.times_alpha(&t, &mut c), &mut c);

    let t = tower.sub_add(&p01, &p00, &mut c);
    let t = tower.sub_add(&t, &p11, &mut c);
    let c1 = tower.sub_add(&t, &tower.times_alpha(&p22, &mut c), &mut c);

    let t = tower.sub_add(&p02, &p00, &mut c);
    let t = tower.sub_add(&t, &p22, &mut c);
    let c2 = tower.sub_add(&t, &p11, &mut c);
    Ok((
        TowerElement {
            form: TowerForm::Kummer3,
            blocks: vec![c0, c1, c2],
        },
        c,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::build_params;

    fn base(n: usize, k: usize) -> Arc<GnbParams> {
        build_params(n, k).unwrap()
    }

    #[test]
    fn as2_relation_and_identity() {
        let t = build_as2(&base(5, 2)).unwrap();
        let a = t.generator();
        let (aa, counts) = t.mul(&a, &a).unwrap();
        assert_eq!(aa, a.add(&t.monomial(0, t.alpha())));
        assert_eq!(
            counts,
            OpCounts {
                mults: 3,
                table_apps: 1,
                additions: 4
            }
        );
        let y = t.parse("0b,1c").unwrap();
        assert_eq!(t.mul(&t.one(), &y).unwrap().0, y);
    }

    #[test]
    fn witt4_constant_choice() {
        let t = build_witt4(&base(5, 2)).unwrap();
        assert_eq!(t.witt_constant(), Some(WittConstant::A));
        let t = build_witt4(&base(6, 3)).unwrap();
        assert_eq!(t.witt_constant(), Some(WittConstant::AlphaA));
        let t = build_witt4(&base(250, 9)).unwrap();
        assert_eq!(t.witt_constant(), Some(WittConstant::AlphaA));
    }

    #[test]
    fn witt4_relation() {
        for (n, k) in [(5, 2), (6, 3), (4, 3)] {
            let t = build_witt4(&base(n, k)).unwrap();
            let b = t.generator();
            let (bb, counts) = t.mul(&b, &b).unwrap();
            assert_eq!(bb, b.add(&t.witt_c2().unwrap()));
            assert_eq!(counts.mults, 9);
            assert!(counts.table_apps <= 9);
            let a = t.witt_a();
            let alpha = t.monomial(0, t.alpha());
            assert_eq!(t.mul(&a, &a).unwrap().0, a.add(&alpha));
        }
    }

    #[test]
    fn kummer_availability() {
        assert_eq!(
            build_kummer3(&base(5, 2)).unwrap_err(),
            Error::KummerUnavailable { d: 5 }
        );
        let t = build_kummer3(&base(6, 3)).unwrap();
        let beta = t.generator();
        let beta2 = t.mul(&beta, &beta).unwrap().0;
        assert_eq!(beta2, t.monomial(2, GnbElement::one(t.base())));
        let (cube, counts) = t.mul(&beta, &beta2).unwrap();
        assert_eq!(cube, t.monomial(0, t.alpha()));
        assert_eq!(
            counts,
            OpCounts {
                mults: 6,
                table_apps: 2,
                additions: 15
            }
        );
    }

    #[test]
    fn form_mismatch() {
        let b = base(6, 3);
        let t = build_as2(&b).unwrap();
        let k = build_kummer3(&b).unwrap();
        assert!(t.mul(&k.one(), &k.one()).is_err());
        assert!(t.parse("01,02,03").is_err());
        assert!(t.parse("01,zz").is_err());
    }
}
