use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// Machine word used to pack polynomial coefficients, least significant bit
/// first.
pub trait Limb: PrimInt + Unsigned + Default + Debug + Hash + Send + Sync + 'static {
    const BITS: usize;

    #[inline]
    fn bit(self, i: usize) -> bool {
        (self >> i) & Self::one() == Self::one()
    }

    /// Carry-less product as `(low, high)` halves.
    #[inline]
    fn clmul(self, rhs: Self) -> (Self, Self) {
        let mut lo = Self::zero();
        let mut hi = Self::zero();
        if rhs.bit(0) {
            lo = self;
        }
        for i in 1..Self::BITS {
            if rhs.bit(i) {
                lo = lo ^ (self << i);
                hi = hi ^ (self >> (Self::BITS - i));
            }
        }
        (lo, hi)
    }
}

impl Limb for u8 {
    const BITS: usize = 8;
}

impl Limb for u16 {
    const BITS: usize = 16;
}

impl Limb for u32 {
    const BITS: usize = 32;
}

impl Limb for u64 {
    const BITS: usize = 64;

    // 4-bit windowed multiply; the generic bit loop is the oracle in tests.
    #[inline]
    fn clmul(self, rhs: u64) -> (u64, u64) {
        let a = self as u128;
        let mut table = [0u128; 16];
        for i in 1..16 {
            table[i] = if i & 1 == 1 {
                table[i - 1] ^ a
            } else {
                table[i >> 1] << 1
            };
        }
        let mut acc = 0u128;
        for w in (0..16).rev() {
            acc = (acc << 4) ^ table[((rhs >> (4 * w)) & 0xf) as usize];
        }
        (acc as u64, (acc >> 64) as u64)
    }
}
