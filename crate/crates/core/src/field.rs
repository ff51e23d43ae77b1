//! Arithmetic in a word-sized prime field, default moduli, and seeded
//! randomness.
//!
//! All exact linear algebra and polynomial arithmetic in this crate runs over
//! Z/p for a 30-bit prime p. The default primes satisfy p ≡ 1 (mod 720720),
//! so the multiplicative group contains elements of every order up to 16;
//! the structured rank engine relies on roots of unity of order m for
//! specializations supported on a multiplicative orbit.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default moduli: two fixed 30-bit primes with p - 1 divisible by 720720
/// (= 2^4 * 3^2 * 5 * 7 * 11 * 13).
pub const DEFAULT_PRIMES: [u64; 2] = [1_068_827_761, 1_068_107_041];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need p > 10^6 so working multinomials stay nonzero)")]
    TooSmall(u64),
    #[error("modulus {0} does not fit a machine word with multiply headroom (need p < 2^31)")]
    TooLarge(u64),
    #[error("no element of multiplicative order {order} mod {p}")]
    NoRootOfUnity { p: u64, order: u64 },
}

/// A prime field Z/p with p a word-sized prime.
///
/// Elements are plain `u64` values reduced to `[0, p)`. The modulus is
/// validated at construction: prime, above 10^6, below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 1_000_000 {
            return Err(FieldError::TooSmall(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// First default field.
    pub fn default_0() -> Self {
        PrimeField {
            p: DEFAULT_PRIMES[0],
        }
    }

    /// Second default field.
    pub fn default_1() -> Self {
        PrimeField {
            p: DEFAULT_PRIMES[1],
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64);
        r as u64
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

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// n! mod p for n < p.
    pub fn factorial(&self, n: u64) -> u64 {
        let mut acc = 1u64;
        for k in 2..=n {
            acc = self.mul(acc, k);
        }
        acc
    }

    /// An element of exact multiplicative order `order`, if one exists
    /// (i.e. if `order` divides p - 1).
    pub fn root_of_unity(&self, order: u64) -> Result<u64, FieldError> {
        let err = FieldError::NoRootOfUnity {
            p: self.p,
            order,
        };
        if order == 0 || (self.p - 1) % order != 0 {
            return Err(err);
        }
        for g in 2..200u64 {
            let w = self.pow(g, (self.p - 1) / order);
            if has_order(self, w, order) {
                return Ok(w);
            }
        }
        Err(err)
    }
}

fn has_order(f: &PrimeField, w: u64, order: u64) -> bool {
    if w == 0 || f.pow(w, order) != 1 {
        return false;
    }
    // order is exact iff w^(order/q) != 1 for every prime q | order
    let mut rem = order;
    let mut q = 2;
    while q * q <= rem {
        if rem % q == 0 {
            if f.pow(w, order / q) == 1 {
                return false;
            }
            while rem % q == 0 {
                rem /= q;
            }
        }
        q += 1;
    }
    if rem > 1 && f.pow(w, order / rem) == 1 {
        return false;
    }
    true
}

/// Deterministic Miller-Rabin, valid for all u64 with the fixed base set.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'outer: for b in BASES {
        let mut x = powmod(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Seed for every randomized choice in the crate.
///
/// Identical (seed, prime, stream tag) produce bit-identical random streams
/// across runs and platforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    /// Deterministic RNG for one purpose. `tag` separates independent streams
    /// derived from the same user seed.
    pub fn rng(&self, prime: u64, tag: u64) -> ChaCha12Rng {
        // splitmix-style mixing of (seed, prime, tag) into one 64-bit state
        let mut z = self
            .0
            .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(prime ^ (tag << 32 | tag >> 32)));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        ChaCha12Rng::seed_from_u64(z ^ (z >> 31))
    }
}
