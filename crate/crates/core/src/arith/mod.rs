//! Integer number theory primitives on arbitrary-precision values.

mod factor;
pub(crate) mod mont;
mod prime;
mod roots;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use factor::{factorize, factorize_with, CofactorStatus, EffortBudget, Factorization};
pub use prime::{
    is_prime_u64, is_probable_prime, is_probable_prime_seeded, primes_up_to, DEFAULT_SEED,
    RANDOM_WITNESSES,
};
pub use roots::{perfect_power, perfect_square_root, perfect_square_root_u64, squarefree_decomposition_u64};

use crate::error::{Error, Result};

/// Reduces a signed integer into `[0, modulus)`.
pub fn reduce(a: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    a.mod_floor(&m).to_biguint().expect("mod_floor is nonnegative")
}

/// `base^exp mod modulus`, for any signed base.
pub fn mod_pow(base: &BigInt, exp: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if modulus.is_zero() {
        return Err(Error::Zero("modulus"));
    }
    Ok(reduce(base, modulus).modpow(exp, modulus))
}

/// Jacobi symbol `(a / n)` for odd `n >= 1`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i8> {
    if n.is_zero() || n.is_even() {
        return Err(Error::EvenModulus(n.to_string()));
    }
    let mut a = reduce(a, n);
    let mut n = n.clone();
    let mut sign = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n_mod_8 = (&n % 8u32).to_u32().unwrap();
            if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
                sign = -sign;
            }
        }
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// Jacobi symbol for machine words; `n` must be odd.
pub fn jacobi_i64(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// `r` with `p^r || n`, by repeated exact division.
pub fn exact_valuation(p: &BigUint, n: &BigUint) -> Result<u64> {
    if p < &BigUint::from(2u32) {
        return Err(Error::OutOfRange { what: "p", value: p.to_string(), expected: ">= 2" });
    }
    if n.is_zero() {
        return Err(Error::Zero("valuation argument"));
    }
    // Divide by p^(2^i) while possible, then walk back down.
    let mut powers = vec![p.clone()];
    let mut rest = n.clone();
    let mut r = 0u64;
    loop {
        let last = powers.last().unwrap();
        let (q, rem) = rest.div_rem(last);
        if !rem.is_zero() {
            break;
        }
        rest = q;
        r += 1 << (powers.len() - 1);
        let sq = last * last;
        if sq > rest {
            break;
        }
        powers.push(sq);
    }
    for (i, pw) in powers.iter().enumerate().rev() {
        let (q, rem) = rest.div_rem(pw);
        if rem.is_zero() {
            rest = q;
            r += 1 << i;
        }
    }
    Ok(r)
}

pub fn exact_valuation_u64(p: u64, mut n: u64) -> u32 {
    debug_assert!(p >= 2 && n > 0);
    let mut r = 0;
    while n.is_multiple_of(p) {
        n /= p;
        r += 1;
    }
    r
}

/// Carmichael's function from a complete factorization of `m`.
pub fn carmichael_lambda(factorization: &Factorization) -> Result<BigUint> {
    if !factorization.is_complete() {
        return Err(Error::IncompleteFactorization(factorization.value.to_string()));
    }
    let two = BigUint::from(2u32);
    let mut acc = BigUint::one();
    for (p, e) in &factorization.factors {
        let part = if *p == two {
            match e {
                1 => BigUint::one(),
                2 => two.clone(),
                _ => BigUint::one() << (e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1u32)
        };
        acc = acc.lcm(&part);
    }
    Ok(acc)
}

/// Multiplicative order of `a` modulo `m`.
///
/// Starts from Carmichael's λ(m), a known multiple of the order, and strips
/// prime factors of it while `a` still raises to 1.
pub fn multiplicative_order(a: &BigInt, m: &BigUint) -> Result<BigUint> {
    let budget = EffortBudget::default();
    if m < &BigUint::from(2u32) {
        return Err(Error::OutOfRange { what: "modulus", value: m.to_string(), expected: ">= 2" });
    }
    let ar = reduce(a, m);
    if !ar.gcd(m).is_one() {
        return Err(Error::NotCoprime { a: a.to_string(), m: m.to_string() });
    }
    let lambda = carmichael_lambda(&factorize(m, &budget)?)?;
    let lambda_factors = factorize(&lambda, &budget)?;
    if !lambda_factors.is_complete() {
        return Err(Error::IncompleteFactorization(lambda.to_string()));
    }
    let mut order = lambda;
    for (q, _) in &lambda_factors.factors {
        while (&order % q).is_zero() {
            let candidate = &order / q;
            if ar.modpow(&candidate, m).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Order of `a` modulo a prime `p` for small word-sized values.
pub fn multiplicative_order_u64(a: u64, p: u64) -> Result<u64> {
    let ord = multiplicative_order(&BigInt::from(a), &BigUint::from(p))?;
    Ok(ord.to_u64().expect("order below modulus"))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Sorted divisors of a word-sized positive integer.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors of a word-sized integer, ascending.
pub fn prime_factors_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    let f = prime_factors_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn is_squarefree_i64(k: i64) -> bool {
    k != 0 && prime_factors_u64(k.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}
