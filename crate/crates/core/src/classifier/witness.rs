//! Quadratic characters and odd exponents `n` with `a^n + 1` not a sum of
//! two squares.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{power_plus_one, Certificate, ClassificationRecord, Classifier, Rule};
use crate::arith::{exact_valuation, gcd_u64, is_prime_u64, jacobi, jacobi_i64, perfect_square_root, prime_factors_u64};
use crate::error::{Error, Result};
use crate::serde_dec;
use crate::two_squares::Status;

/// Number of admissible primes `q` tried before giving up.
pub const WITNESS_SEARCH_LIMIT: usize = 25;

/// `chi_a(n)`: the Jacobi symbol `(a/n)` for odd `n`, 0 for even `n`.
pub fn chi(a: &BigInt, n: u64) -> i8 {
    if n.is_multiple_of(2) {
        return 0;
    }
    jacobi(a, &BigUint::from(n)).expect("odd positive modulus")
}

/// `chi_a(n)` rebuilt as `chi_delta(n) * prod chi_{p*}(n)` over the primes
/// dividing `a` to an odd power, `delta` in `{1, -1, 2, -2}` and
/// `p* = (-1)^((p-1)/2) p`. Needs `gcd(a, n) = 1`.
pub fn chi_factored(a: i64, n: u64) -> Result<i8> {
    if a == 0 {
        return Err(Error::Zero("a"));
    }
    if gcd_u64(a.unsigned_abs(), n) != 1 {
        return Err(Error::NotCoprime { a: a.to_string(), m: n.to_string() });
    }
    if n.is_multiple_of(2) {
        return Ok(0);
    }
    let abs = a.unsigned_abs();
    let b = abs.trailing_zeros();
    let odd = abs >> b;
    let mut delta: i64 = if odd % 4 == 3 { -1 } else { 1 };
    if b % 2 == 1 {
        delta *= 2;
    }
    if a < 0 {
        delta = -delta;
    }
    let mut value = jacobi_i64(delta, n);
    for (p, e) in prime_factors_u64(odd) {
        if e % 2 == 1 {
            let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
            value *= jacobi_i64(p_star, n);
        }
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSotsWitness {
    #[serde(with = "serde_dec")]
    pub a: BigUint,
    /// The prime `q = 3 (mod 4)` with `(a/q) = -1`.
    pub q: u64,
    pub n: u64,
    pub record: ClassificationRecord,
}

/// Finds an odd `n` with `a^n + 1` provably not a sum of two squares.
///
/// For a prime `q = 3 (mod 4)` with `(a/q) = -1`, `q` divides
/// `a^((q-1)/2) + 1`. Either it does so to an odd power, or the power goes
/// up by one at `n = q (q-1)/2`; both exponents are odd. A refutation of
/// `a^((q-1)/2) + 1` by other means is taken first.
pub fn witness_nonsots(classifier: &Classifier, a: &BigUint) -> Result<NonSotsWitness> {
    if a < &BigUint::from(2u32) {
        return Err(Error::OutOfRange { what: "a", value: a.to_string(), expected: ">= 2" });
    }
    if perfect_square_root(a).is_some() {
        return Err(Error::Precondition(format!("{a} is a perfect square")));
    }
    let ai = BigInt::from(a.clone());
    let mut tried = 0;
    let mut q = 3u64;
    while tried < WITNESS_SEARCH_LIMIT {
        let admissible = is_prime_u64(q) && (a % q).to_u64() != Some(0) && chi(&ai, q) == -1;
        if admissible {
            tried += 1;
            let qb = BigUint::from(q);
            let n1 = (q - 1) / 2;
            let v1 = exact_valuation(&qb, &power_plus_one(a, n1)?)?;
            if v1 % 2 == 1 {
                return Ok(found(classifier, a, q, n1, v1));
            }
            let r1 = classifier.decide(a, n1)?;
            if r1.status == Status::No {
                return Ok(NonSotsWitness { a: a.clone(), q, n: n1, record: r1 });
            }
            let n2 = q * n1;
            let v2 = exact_valuation(&qb, &power_plus_one(a, n2)?)?;
            if v2 % 2 == 1 {
                return Ok(found(classifier, a, q, n2, v2));
            }
        }
        q += 4;
    }
    Err(Error::Internal(format!(
        "no witness exponent for {a} among the first {WITNESS_SEARCH_LIMIT} admissible primes"
    )))
}

fn found(classifier: &Classifier, a: &BigUint, q: u64, n: u64, r: u64) -> NonSotsWitness {
    let record = ClassificationRecord::no(
        a,
        n,
        Rule::NonResidue,
        Certificate::BadPrime { p: BigUint::from(q), r },
    );
    if classifier.cached(a, n).is_none() {
        classifier.store(record.clone());
    }
    NonSotsWitness { a: a.clone(), q, n, record }
}
