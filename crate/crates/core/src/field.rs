//! Arithmetic in GF(p) for a prime p that fits in 32 bits.
//!
//! Elements are canonical `u64` representatives in `[0, p)`. Every operation
//! reduces back to that range, so equality of values is equality in the field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest modulus accepted for a computation run.
pub const MIN_MODULUS: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field GF(p). Rejects composite moduli, moduli below 2^20
    /// and moduli that do not fit in 32 bits.
    pub fn new(p: u64) -> Result<Self> {
        if p < MIN_MODULUS {
            return Err(Error::ModulusTooSmall(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Canonical representative of a signed integer.
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let m = self.p as i64;
        (((a % m) + m) % m) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Both operands are below 2^32, so the product fits in a `u64`.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Ok(self.reduce_i64(t))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Whether a is a nonzero square.
    pub fn is_square(&self, a: u64) -> bool {
        a != 0 && self.pow(a, (self.p - 1) / 2) == 1
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// First prime >= n, for picking independent verification primes.
pub fn next_prime_at_least(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n % 2 == 0 {
        n += 1;
    }
    while !is_prime(n) {
        n += 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_mersenne_prime() {
        let f = PrimeField::new(2147483647).unwrap();
        assert_eq!(f.modulus(), 2147483647);
    }

    #[test]
    fn rejects_below_threshold() {
        assert!(matches!(
            PrimeField::new(10007),
            Err(Error::ModulusTooSmall(10007))
        ));
    }

    #[test]
    fn rejects_composite() {
        assert!(matches!(
            PrimeField::new(2147483646),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn inverse_of_one_and_minus_one() {
        let f = PrimeField::new(2147483647).unwrap();
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(f.modulus() - 1).unwrap(), f.modulus() - 1);
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn inverse_defining_property_random() {
        let f = PrimeField::new(2147483647).unwrap();
        let mut x = 123456789u64;
        for _ in 0..100 {
            // xorshift, cheap deterministic sampling
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let a = f.reduce(x);
            if a == 0 {
                continue;
            }
            let b = f.inv(a).unwrap();
            assert_eq!(f.mul(a, b), 1);
        }
    }

    #[test]
    fn primality_small_cases() {
        assert!(is_prime(2));
        assert!(is_prime(1048583));
        assert!(!is_prime(1));
        assert!(!is_prime(1048585));
        assert_eq!(next_prime_at_least(1 << 20), 1048583);
    }
}
