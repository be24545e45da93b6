//! Checked 64-bit integer helpers shared by the normal-form routines.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

/// `a + k * b`, checked.
#[inline]
pub(crate) fn axpy(a: i64, k: i64, b: i64) -> Result<i64> {
    add(a, mul(k, b)?)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    mul(a / gcd(a, b), b).map(i64::abs)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, sub(old_r, mul(q, r)?)?);
        (old_s, s) = (s, sub(old_s, mul(q, s)?)?);
        (old_t, t) = (t, sub(old_t, mul(q, t)?)?);
    }
    if old_r < 0 {
        Ok((-old_r, -old_s, -old_t))
    } else {
        Ok((old_r, old_s, old_t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for a in -30..30 {
            for b in -30..30 {
                let (g, s, t) = ext_gcd(a, b).unwrap();
                assert_eq!(g, gcd(a, b));
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(mul(i64::MAX, 2), Err(Error::Overflow(_))));
        assert_eq!(lcm(4, 6).unwrap(), 12);
    }
}
