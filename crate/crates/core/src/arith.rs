//! Checked signed 64-bit helpers. Every overflow becomes [`Error::Overflow`].

use crate::error::{Error, Result};

/// Entries of instances must stay strictly below this magnitude.
pub const MAGNITUDE_CAP: u64 = 1 << 62;

#[inline]
pub fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

#[inline]
pub fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

#[inline]
pub fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// `2^exp`, failing past 2^62.
pub fn pow2(exp: u32) -> Result<i64> {
    if exp > 62 {
        return Err(Error::Overflow("power of two"));
    }
    Ok(1i64 << exp)
}

/// Dot product with overflow checking.
pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| add(acc, mul(x, y)?))
}

/// `⌊log₂ k⌋` for `k ≥ 1`.
pub fn floor_log2(k: u64) -> u32 {
    debug_assert!(k > 0);
    63 - k.leading_zeros()
}

/// `⌈log₂ k⌉` for `k ≥ 1`.
pub fn ceil_log2(k: u64) -> u32 {
    debug_assert!(k > 0);
    if k == 1 {
        0
    } else {
        64 - (k - 1).leading_zeros()
    }
}
