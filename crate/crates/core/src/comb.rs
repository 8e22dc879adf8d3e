//! Small combinatorial helpers shared across modules.

/// Binomial coefficient C(n, k) as u64; returns 0 when k > n.
/// Arguments stay desk-scale here, so intermediate products fit in u128.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// C(n, k) for signed n, zero whenever n < 0 or k > n.
pub fn binom_i64(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binom(n as u64, k as u64)
    }
}
