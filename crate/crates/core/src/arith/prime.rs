//! Primality testing and small-prime sieves.
//!
//! Miller-Rabin with the first thirteen prime bases is deterministic below
//! 3,317,044,064,679,887,385,961,981 (Sorenson and Webster). Above that bound
//! the fixed bases are followed by pseudorandom bases drawn from a seeded
//! ChaCha stream, so repeated runs give identical answers.

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::mont::{Mont128, Mont64};

const FIXED_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Extra pseudorandom witnesses used above the deterministic bound.
pub const RANDOM_WITNESSES: usize = 20;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_2016_0a11_ce55;

fn deterministic_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

/// Sieve of Eratosthenes returning all primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes up to 10^5, shared by every caller using the default trial bound.
pub(crate) fn default_small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(100_000))
}

fn strong_probable_prime_u64(n: u64, m: &Mont64, base: u64) -> bool {
    let d_shift = (n - 1).trailing_zeros();
    let d = (n - 1) >> d_shift;
    let one = m.to_mont(1);
    let minus_one = m.to_mont(n - 1);
    let mut x = m.pow(m.to_mont(base), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..d_shift {
        x = m.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Deterministic primality for machine-word inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &FIXED_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    if n >= 1 << 63 {
        let big = BigUint::from(n);
        return FIXED_BASES
            .iter()
            .all(|&b| strong_probable_prime_big(&big, &BigUint::from(b)));
    }
    let m = Mont64::new(n);
    FIXED_BASES[..12]
        .iter()
        .all(|&b| strong_probable_prime_u64(n, &m, b))
}

fn strong_probable_prime_u128(n: u128, m: &Mont128, base: &BigUint) -> bool {
    let nm1 = n - 1;
    let s = nm1.trailing_zeros();
    let d = nm1 >> s;
    let limbs = [d as u64, (d >> 64) as u64];
    let b = (base % BigUint::from(n)).to_u128().unwrap();
    if b == 0 {
        return true;
    }
    let one = m.to_mont(1);
    let minus_one = m.to_mont(nm1);
    let mut x = m.pow(m.to_mont(b), &limbs);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = m.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn strong_probable_prime_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let b = base % n;
    if b.is_zero() {
        return true;
    }
    let mut x = b.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Primality test with the default witness seed.
pub fn is_probable_prime(n: &BigUint) -> bool {
    is_probable_prime_seeded(n, DEFAULT_SEED)
}

/// Primality test; `seed` only matters above the deterministic bound.
pub fn is_probable_prime_seeded(n: &BigUint, seed: u64) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if !n.bit(0) {
        return false;
    }
    for &p in default_small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bases = FIXED_BASES.iter().map(|&b| BigUint::from(b));
    let fixed_ok = match n.to_u128() {
        Some(v) if v < 1 << 127 => {
            let m = Mont128::new(v);
            bases.into_iter().all(|b| strong_probable_prime_u128(v, &m, &b))
        }
        _ => bases.into_iter().all(|b| strong_probable_prime_big(n, &b)),
    };
    if !fixed_ok {
        return false;
    }
    if n < deterministic_bound() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    let upper = n - 2u32;
    (0..RANDOM_WITNESSES).all(|_| {
        let b = rng.gen_biguint_range(&two, &upper);
        strong_probable_prime_big(n, &b)
    })
}
