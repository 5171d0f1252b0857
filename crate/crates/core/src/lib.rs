//! Efficient bases of binary field extensions `F_{2^n} / F_2`.
//!
//! * [`gf2x`]: packed polynomials over GF(2) (schoolbook, Karatsuba, cyclic
//!   products) and Zech-logarithm tables for small fields `F_{2^e}`.
//! * [`numtheory`]: primality, factorization, multiplicative orders.
//! * [`gauss`]: Gaussian normal bases, with multiplication routed through the
//!   ring `F_2[x]/(x^r - 1)`.
//! * [`algebraic`]: the `n_q` valuation and embedding-degree searches for
//!   elliptic and multiplicative-group normal bases.
//! * [`towers`]: Artin-Schreier, Artin-Schreier-Witt and Kummer extensions of
//!   a Gaussian normal basis, plus an independent polynomial-basis oracle.
//! * [`tables`]: range scanners and golden-file diffing for the parameter
//!   tables.

pub mod algebraic;
mod error;
pub mod gauss;
pub mod gf2x;
pub mod numtheory;
pub mod tables;
pub mod towers;

pub use error::{Error, NormalityFailure, Result};

/// Polynomials over GF(2) packed into 64-bit limbs.
pub type Poly = gf2x::BinaryPolynomial<u64>;
/// Polynomials over GF(2) packed into 32-bit limbs.
pub type Poly32 = gf2x::BinaryPolynomial<u32>;
/// Polynomials over GF(2) packed into bytes.
pub type Poly8 = gf2x::BinaryPolynomial<u8>;

pub use algebraic::{EmbeddingResult, Mechanism, NqProfile};
pub use gauss::{GnbElement, GnbParams, MultTable};
pub use gf2x::ZechField;
pub use numtheory::Factorization;
pub use towers::{OpCounts, OracleTower, TowerElement, TowerForm, TowerParams};
