//! Slow reference arithmetic for the towers.
//!
//! The base field is rebuilt as `F_2[z]/(m)` where `m` is the minimal
//! polynomial of `alpha_0`, obtained from the Gauss-period expansion
//! `alpha_i = sum_{j in 2^i K} gamma^j` alone. Tower elements become
//! multivariate polynomials over that field, multiplied naively and then
//! rewritten with the defining relations.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{TowerElement, TowerForm, TowerParams, WittConstant};
use crate::gauss::{GnbElement, GnbParams};
use crate::gf2x::BitMatrix;
use crate::{Error, Poly, Result};

/// Row `i` is `alpha_0 * alpha_i`, counted term by term from the periods.
pub fn gamma_expansion_table(params: &GnbParams) -> BitMatrix {
    let (n, r) = (params.n(), params.r());
    let all_ones = Poly::from_exponents(0..n);
    let k0 = params.coset(0);
    let rows = (0..n)
        .map(|i| {
            let mut count = vec![0u32; r];
            for &a in &k0 {
                for &b in &params.coset(i) {
                    count[(a + b) % r] += 1;
                }
            }
            // the product is constant on cosets; read one exponent per coset
            let mut row = Poly::zero();
            for c in 0..n {
                let rep = params.coset(c)[0];
                row.set_coeff(c, count[rep] % 2 == 1);
            }
            if count[0] % 2 == 1 {
                row = &row + &all_ones;
            }
            row
        })
        .collect();
    BitMatrix::new(rows, n)
}

/// Minimal polynomial of `alpha_0` over `F_2` by Krylov elimination.
pub fn minpoly_gauss_period(params: &GnbParams) -> Result<Poly> {
    let n = params.n();
    let table = gamma_expansion_table(params);
    // reduced rows paired with the combination of powers that produced them
    let mut echelon: Vec<(usize, Poly, Poly)> = Vec::new();
    let mut v = Poly::from_exponents(0..n);
    for j in 0..=n {
        let mut vec = v.clone();
        let mut combo = Poly::monomial(j);
        for (pivot, row, c) in &echelon {
            if vec.coeff(*pivot) {
                vec = &vec + row;
                combo = &combo + c;
            }
        }
        match vec.degree() {
            None => {
                if combo.degree() != Some(n) {
                    return Err(Error::Invariant(format!(
                        "alpha_0 has degree {:?} < {n}",
                        combo.degree()
                    )));
                }
                return Ok(combo);
            }
            Some(pivot) => echelon.push((pivot, vec, combo)),
        }
        v = table.vec_mul(&v);
    }
    Err(Error::Invariant("Krylov sequence did not close".into()))
}

type Monomial = Vec<usize>;

/// Reference model of a tower over `F_2[z]/(m)`.
#[derive(Clone, Debug)]
pub struct OracleTower {
    base: Arc<GnbParams>,
    form: TowerForm,
    witt_constant: Option<WittConstant>,
    modulus: Poly,
    /// Row `i` is `z^(2^i) mod m`.
    to_poly: BitMatrix,
    to_coords: BitMatrix,
}

impl OracleTower {
    pub fn new(tower: &TowerParams) -> Result<Self> {
        let base = tower.base().clone();
        let modulus = minpoly_gauss_period(&base)?;
        let n = base.n();
        let mut rows = Vec::with_capacity(n);
        let mut z = Poly::x();
        for _ in 0..n {
            rows.push(z.clone());
            z = z.square().rem(&modulus)?;
        }
        let to_poly = BitMatrix::new(rows, n);
        let to_coords = to_poly
            .inverse()
            .ok_or_else(|| Error::Invariant("conjugates of z are dependent".into()))?;
        Ok(Self {
            base,
            form: tower.form(),
            witt_constant: tower.witt_constant(),
            modulus,
            to_poly,
            to_coords,
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn to_poly(&self, x: &GnbElement) -> Poly {
        self.to_poly.vec_mul(x.coords())
    }

    pub fn to_gnb(&self, p: &Poly) -> Result<GnbElement> {
        GnbElement::from_coords(&self.base, self.to_coords.vec_mul(p))
    }

    fn vars(&self) -> usize {
        match self.form {
            TowerForm::Witt4 => 2,
            _ => 1,
        }
    }

    fn block_monomials(&self) -> Vec<Monomial> {
        match self.form {
            TowerForm::As2 => vec![vec![0], vec![1]],
            TowerForm::Witt4 => vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            TowerForm::Kummer3 => vec![vec![0], vec![1], vec![2]],
        }
    }

    fn lift(&self, x: &TowerElement) -> BTreeMap<Monomial, Poly> {
        self.block_monomials()
            .into_iter()
            .zip(x.blocks())
            .filter(|(_, b)| !b.is_zero())
            .map(|(m, b)| (m, self.to_poly(b)))
            .collect()
    }

    fn alpha(&self) -> Poly {
        Poly::x()
    }

    /// One rewriting step for a monomial that is out of range.
    fn rewrite(&self, m: &Monomial) -> Option<Vec<(Monomial, Poly)>> {
        let one = Poly::one();
        match self.form {
            TowerForm::As2 | TowerForm::Witt4 if m[0] >= 2 => {
                // a^2 = a + alpha
                let mut t1 = m.clone();
                t1[0] -= 1;
                let mut t2 = m.clone();
                t2[0] -= 2;
                Some(vec![(t1, one), (t2, self.alpha())])
            }
            TowerForm::Witt4 if m[1] >= 2 => {
                // b^2 = b + c2
                let mut t1 = m.clone();
                t1[1] -= 1;
                let mut t2 = m.clone();
                t2[1] -= 2;
                t2[0] += 1;
                let coeff = match self.witt_constant {
                    Some(WittConstant::AlphaA) => self.alpha(),
                    _ => one.clone(),
                };
                Some(vec![(t1, one), (t2, coeff)])
            }
            TowerForm::Kummer3 if m[0] >= 3 => Some(vec![(vec![m[0] - 3], self.alpha())]),
            _ => None,
        }
    }

    pub fn mul(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
        if x.form() != self.form || y.form() != self.form {
            return Err(Error::param("operand form does not match the oracle"));
        }
        let (lx, ly) = (self.lift(x), self.lift(y));
        let mut pending: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (mx, px) in &lx {
            for (my, py) in &ly {
                let m: Monomial = (0..self.vars()).map(|i| mx[i] + my[i]).collect();
                let p = px.mulmod(py, &self.modulus)?;
                accumulate(&mut pending, m, p);
            }
        }
        let mut done: BTreeMap<Monomial, Poly> = BTreeMap::new();
        while let Some((m, p)) = pending.pop_last() {
            match self.rewrite(&m) {
                None => accumulate(&mut done, m, p),
                Some(terms) => {
                    for (t, c) in terms {
                        accumulate(&mut pending, t, p.mulmod(&c, &self.modulus)?);
                    }
                }
            }
        }
        let blocks = self
            .block_monomials()
            .iter()
            .map(|m| self.to_gnb(done.get(m).unwrap_or(&Poly::zero())))
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerElement {
            form: self.form,
            blocks,
        })
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Poly>, m: Monomial, p: Poly) {
    let entry = map.entry(m).or_insert_with(Poly::zero);
    *entry = &*entry + &p;
}

/// Builds the reference model of `tower` and multiplies once.
pub fn oracle_mul(tower: &TowerParams, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
    OracleTower::new(tower)?.mul(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{build_params, mult_table};
    use crate::towers::build;

    #[test]
    fn gamma_table_matches_fast_table() {
        for (n, k) in [(2, 1), (3, 2), (5, 2), (6, 3), (12, 5), (10, 1), (4, 3)] {
            let p = build_params(n, k).unwrap();
            assert_eq!(
                gamma_expansion_table(&p).rows(),
                mult_table(&p).unwrap().matrix().rows(),
                "({n}, {k})"
            );
        }
    }

    #[test]
    fn minpoly_small_cases() {
        // type 1, n = 2: alpha is a root of x^2 + x + 1
        let p = build_params(2, 1).unwrap();
        assert_eq!(minpoly_gauss_period(&p).unwrap(), Poly::from_u64(0b111));
        // type 1, n = 4: the fifth roots of unity other than 1
        let p = build_params(4, 1).unwrap();
        assert_eq!(minpoly_gauss_period(&p).unwrap(), Poly::from_u64(0b11111));
        for (n, k) in [(5, 2), (6, 3), (12, 5), (9, 2)] {
            let m = minpoly_gauss_period(&build_params(n, k).unwrap()).unwrap();
            assert_eq!(m.degree(), Some(n));
            assert!(m.is_irreducible().unwrap());
        }
    }

    #[test]
    fn oracle_agrees_on_basis_products() {
        for (n, k) in [(5, 2), (6, 3)] {
            let base = build_params(n, k).unwrap();
            for form in [TowerForm::As2, TowerForm::Witt4, TowerForm::Kummer3] {
                let Ok(t) = build(&base, form) else { continue };
                let o = OracleTower::new(&t).unwrap();
                for i in 0..form.blocks() {
                    for j in 0..form.blocks() {
                        let x = t.monomial(i, GnbElement::basis(&base, (i + 1) % n));
                        let y = t.monomial(j, GnbElement::basis(&base, (2 * j) % n));
                        assert_eq!(o.mul(&x, &y).unwrap(), t.mul(&x, &y).unwrap().0, "{form} {i} {j}");
                    }
                }
            }
        }
    }
}
