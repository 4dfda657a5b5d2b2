//! Counter types for the dynamic programs: a fast `u128` path with overflow
//! detection and an arbitrary precision fallback.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) trait Counter: Clone + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn from_big(x: &BigUint) -> Option<Self>;
}

impl Counter for u128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        u128::checked_add(*self, *o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        u128::checked_mul(*self, *o)
    }
    fn from_big(x: &BigUint) -> Option<Self> {
        x.to_u128()
    }
}

impl Counter for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(self) || Zero::is_zero(o) {
            return Some(Zero::zero());
        }
        if self.is_one() {
            return Some(o.clone());
        }
        Some(self * o)
    }
    fn from_big(x: &BigUint) -> Option<Self> {
        Some(x.clone())
    }
}

/// `multichoose(x, m)` for `x = 0..=max`, or `None` on overflow.
pub(crate) fn multichoose_row<C: Counter>(m: u64, max: u64) -> Option<Vec<C>> {
    (0..=max)
        .map(|x| C::from_big(&crate::exact::multichoose(x, m)))
        .collect()
}
