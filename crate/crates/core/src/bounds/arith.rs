//! Exact integer helpers: binomials, powers and integer roots.
//!
//! Every radical in the bound formulas goes through [`int_root_floor`] or
//! [`int_root_ceil`]; nothing here touches floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, with `C(n, k) = 0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Largest `m` with `m^k ≤ n`, by binary search on `[0, 2^(⌊bits/k⌋+1))`.
pub fn int_root_floor(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root degree must be positive");
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (n.bits() / k as u64 + 1);
    // invariant: lo^k <= n < hi^k
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1u32;
        if num_traits::pow(mid.clone(), k as usize) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest `m` with `m^k ≥ n`.
pub fn int_root_ceil(n: &BigUint, k: u32) -> BigUint {
    let r = int_root_floor(n, k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        r
    } else {
        r + 1u32
    }
}

/// `int_root_floor` on machine words.
pub fn int_root_floor_u128(n: u128, k: u32) -> u128 {
    assert!(k >= 1, "root degree must be positive");
    if n == 0 || k == 1 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut lo: u128 = 0;
    let mut hi: u128 = 1 << (bits / k + 1).min(127);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match checked_pow(mid, k) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

pub fn int_root_ceil_u128(n: u128, k: u32) -> u128 {
    let r = int_root_floor_u128(n, k);
    if checked_pow(r, k) == Some(n) {
        r
    } else {
        r + 1
    }
}

pub(crate) fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// `C(n, k)` in `u128`, `None` on overflow.
pub(crate) fn checked_binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;
    use proptest::prelude::*;

    #[test]
    fn root_examples() {
        assert_eq!(int_root_floor(&BigUint::from(9u32), 2), BigUint::from(3u32));
        assert_eq!(int_root_floor(&BigUint::from(125u32), 3), BigUint::from(5u32));
        assert_eq!(int_root_ceil(&BigUint::from(125u32), 3), BigUint::from(5u32));
        assert_eq!(int_root_floor(&BigUint::from(192u32), 4), BigUint::from(3u32));
        assert_eq!(int_root_ceil(&BigUint::from(192u32), 4), BigUint::from(4u32));
        assert_eq!(int_root_floor_u128(0, 3), 0);
        assert_eq!(int_root_floor_u128(u128::MAX, 1), u128::MAX);
        assert_eq!(int_root_floor_u128(u128::MAX, 2), u64::MAX as u128);
    }

    #[test]
    fn perfect_square_boundaries() {
        for m in 1u64..2000 {
            let sq = BigUint::from(m * m);
            assert_eq!(int_root_floor(&sq, 2), BigUint::from(m));
            assert_eq!(int_root_floor(&(&sq - 1u32), 2), BigUint::from(m - 1));
            assert_eq!(int_root_ceil(&(&sq + 1u32), 2), BigUint::from(m + 1));
        }
    }

    #[test]
    fn binomial_convention_and_values() {
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(checked_binomial(4, 6), Some(0));
        assert_eq!(checked_binomial(60, 30), Some(118264581564861424));
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    proptest! {
        #[test]
        fn floor_root_matches_num_integer(n in any::<u64>(), k in 1u32..7) {
            let expect = n.nth_root(k);
            prop_assert_eq!(int_root_floor(&BigUint::from(n), k), BigUint::from(expect));
            prop_assert_eq!(int_root_floor_u128(n as u128, k), expect as u128);
        }

        #[test]
        fn ceil_root_is_tight(n in 1u64.., k in 1u32..7) {
            let c = int_root_ceil_u128(n as u128, k);
            prop_assert!(checked_pow(c, k).map_or(true, |v| v >= n as u128));
            prop_assert!(checked_pow(c - 1, k).unwrap() < n as u128);
            prop_assert_eq!(int_root_ceil(&BigUint::from(n), k), BigUint::from(c));
        }

        #[test]
        fn checked_binomial_agrees_with_big(n in 0u64..80, k in 0u64..80) {
            let big = binomial(n, k);
            prop_assert_eq!(BigUint::from(checked_binomial(n, k).unwrap()), big);
        }
    }
}
