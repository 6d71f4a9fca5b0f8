//! Exact 256-bit accumulator for sums of squares of `i128` values.

use num_bigint::BigUint;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct SquareSum {
    hi: u128,
    lo: u128,
}

#[inline]
fn square(m: u128) -> (u128, u128) {
    let a = m >> 64;
    let b = m & u64::MAX as u128;
    let mid = 2 * a * b; // a < 2^63 because m < 2^127
    let (lo, c1) = (b * b).overflowing_add(mid << 64);
    let hi = a * a + (mid >> 64) + c1 as u128;
    (hi, lo)
}

impl SquareSum {
    /// Adds `weight * v²`.
    #[inline]
    pub fn add_square(&mut self, v: i128, weight: u8) {
        let (hi, lo) = square(v.unsigned_abs());
        for _ in 0..weight {
            let (l, c) = self.lo.overflowing_add(lo);
            self.lo = l;
            self.hi = self.hi.checked_add(hi + c as u128).expect("square sum exceeds 256 bits");
        }
    }

    pub fn merge(&mut self, other: &SquareSum) {
        let (l, c) = self.lo.overflowing_add(other.lo);
        self.lo = l;
        self.hi = self.hi.checked_add(other.hi + c as u128).expect("square sum exceeds 256 bits");
    }

    pub fn to_biguint(self) -> BigUint {
        (BigUint::from(self.hi) << 128u32) + BigUint::from(self.lo)
    }
}
