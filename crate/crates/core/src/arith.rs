//! Exact integer helpers for the bounds that appear in certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Smallest `k` with `2^k >= n`. `n` must be positive.
pub fn ceil_log2(n: u128) -> u32 {
    assert!(n > 0, "ceil_log2 of zero");
    if n == 1 {
        0
    } else {
        128 - (n - 1).leading_zeros()
    }
}

/// Largest `k` with `2^k <= n`. `n` must be positive.
pub fn floor_log2(n: u128) -> u32 {
    assert!(n > 0, "floor_log2 of zero");
    127 - n.leading_zeros()
}

/// `2^k` when it fits.
pub fn pow2(k: u32) -> Option<u128> {
    1u128.checked_shl(k).filter(|_| k < 128)
}

/// `ceil(sqrt(n))` for a nonnegative integer.
pub fn ceil_sqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

/// `ceil(sqrt(log2(h)))` without floating point: the least `s` with
/// `2^(s^2) >= h`.
pub fn ceil_sqrt_log2(h: u128) -> u32 {
    let mut s = 0u32;
    while pow2(s * s).is_some_and(|p| p < h) {
        s += 1;
    }
    s
}

pub fn ratio(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `ceil(q)` as an integer.
pub fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// `floor(log_base(q))` for `q > 0`, `base > 1` integer: the largest `t`
/// (possibly negative) with `base^t <= q`.
pub fn floor_log(base: u64, q: &BigRational) -> i64 {
    assert!(base > 1 && q > &BigRational::zero());
    let b = BigRational::from_integer(BigInt::from(base));
    let mut t = 0i64;
    let mut p = BigRational::one();
    if q >= &p {
        while &(&p * &b) <= q {
            p = &p * &b;
            t += 1;
        }
    } else {
        while &p > q {
            p = &p / &b;
            t -= 1;
        }
    }
    t
}
