//! Scalar arithmetic in the prime field Z/p.
//!
//! Coefficients are stored as canonical representatives in `[0, p)` with the
//! modulus carried alongside. Products go through `u128` so any prime below
//! `2^31` is safe from overflow.

use crate::error::{Error, Result};

/// An element of Z/p in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    value: u64,
}

impl PrimeField {
    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn new(p: u64, value: i64) -> Self {
        PrimeField {
            p,
            value: reduce_signed(value, p),
        }
    }

    /// Wraps a value already known to lie in `[0, p)`.
    pub fn from_canonical(p: u64, value: u64) -> Self {
        debug_assert!(value < p);
        PrimeField { p, value }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// Checks that `p` is a prime in the supported range `2 <= p < 2^31`.
pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 || p >= (1 << 31) {
        return Err(Error::InvalidArgument(format!(
            "modulus {p} out of range [2, 2^31)"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Trial-division primality test; inputs are below 2^31 so this is cheap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Reduces a signed integer mod p into `[0, p)`.
pub fn reduce_signed(value: i64, p: u64) -> u64 {
    let m = value.rem_euclid(p as i64);
    m as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse via Fermat's little theorem; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}
