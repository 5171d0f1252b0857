use crate::Poly;

/// Square or rectangular matrix over GF(2); rows are packed bit vectors.
///
/// Vectors multiply from the left: `v * M = sum of rows i with v_i = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<Poly>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(rows: Vec<Poly>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.degree().is_none_or(|d| d < cols)));
        Self { rows, cols }
    }

    pub fn zero(n: usize, cols: usize) -> Self {
        Self::new(vec![Poly::zero(); n], cols)
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(Poly::monomial).collect(), n)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].coeff(j)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.rows.iter().map(Poly::weight).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Poly::is_zero)
    }

    pub fn vec_mul(&self, v: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in v.exponents() {
            out += &self.rows[i];
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.nrows());
        BitMatrix::new(self.rows.iter().map(|r| rhs.vec_mul(r)).collect(), rhs.cols)
    }

    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        let rows = self.rows.iter().zip(&rhs.rows).map(|(a, b)| a + b).collect();
        BitMatrix::new(rows, self.cols)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows.len();
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut a = self.rows.clone();
        let mut inv: Vec<Poly> = (0..n).map(Poly::monomial).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| a[i].coeff(col))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for i in 0..n {
                if i != col && a[i].coeff(col) {
                    let (ra, ri) = (a[col].clone(), inv[col].clone());
                    a[i] += &ra;
                    inv[i] += &ri;
                }
            }
        }
        Some(BitMatrix::new(inv, n))
    }
}
