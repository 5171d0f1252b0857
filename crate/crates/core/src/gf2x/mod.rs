//! Arithmetic in GF(2)[x] and in small fields `F_{2^e}`.

mod limb;
mod matrix;
mod poly;
mod zech;

pub use limb::Limb;
pub use matrix::BitMatrix;
pub use poly::{BinaryPolynomial, DEFAULT_KARATSUBA_THRESHOLD};
pub use zech::{ZechField, MAX_ZECH_DEGREE, MIN_ZECH_DEGREE};
