//! Exact binomial coefficients on big integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// C(n, k) with the usual combinatorial conventions: zero when `k < 0` or
/// `k > n`. Requires `n >= 0`; all call sites in this crate guarantee it.
pub fn binomial(n: i64, k: i64) -> BigUint {
    assert!(n >= 0, "binomial: negative upper index {n}");
    if k < 0 || k > n {
        return BigUint::zero();
    }
    // C(n, k) = C(n, n - k); use the smaller loop.
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
