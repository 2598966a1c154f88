//! Deciding and constructing `N = x^2 + y^2`.

mod cornacchia;
mod density;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use cornacchia::{prime_as_two_squares, sqrt_minus_one};
pub use density::{density_ratio, density_ratio_with, sieve_count, DensitySample, DENSITY_MAX};

use crate::arith::{exact_valuation, factorize_with, EffortBudget, Factorization};
use crate::error::{Error, Result};
use crate::serde_dec;

/// Upper limit for [`brute_force`].
pub const BRUTE_FORCE_MAX: u64 = 100_000_000_000_000;

/// Upper bound on the number of Gaussian factor combinations [`represent`]
/// enumerates before settling for a single composition.
pub const REPRESENTATION_CAP: usize = 4096;

/// Why a number is not a sum of two squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoCertificate {
    /// `p = 3 mod 4` with `p^r || N`, `r` odd.
    BadPrime {
        #[serde(with = "serde_dec")]
        p: BigUint,
        r: u64,
    },
    /// An unsplit divisor `c = 3 mod 4` coprime to `N / c`: some prime
    /// `3 mod 4` occurs in it, and hence in `N`, to an odd power.
    Cofactor3Mod4 {
        #[serde(with = "serde_dec")]
        cofactor: BigUint,
    },
}

impl NoCertificate {
    /// Re-checks the certificate against `n`.
    pub fn verify(&self, n: &BigUint) -> bool {
        match self {
            NoCertificate::BadPrime { p, r } => {
                (p % 4u32).to_u32() == Some(3)
                    && r % 2 == 1
                    && exact_valuation(p, n).is_ok_and(|v| v == *r)
            }
            NoCertificate::Cofactor3Mod4 { cofactor } => {
                (cofactor % 4u32).to_u32() == Some(3)
                    && (n % cofactor).is_zero()
                    && cofactor.gcd(&(n / cofactor)).is_one()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TwoSquaresVerdict {
    Yes {
        #[serde(with = "serde_dec")]
        x: BigUint,
        #[serde(with = "serde_dec")]
        y: BigUint,
    },
    No {
        certificate: NoCertificate,
    },
    Unknown {
        #[serde(with = "serde_dec")]
        blocking_cofactor: BigUint,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl TwoSquaresVerdict {
    pub fn status(&self) -> Status {
        match self {
            TwoSquaresVerdict::Yes { .. } => Status::Yes,
            TwoSquaresVerdict::No { .. } => Status::No,
            TwoSquaresVerdict::Unknown { .. } => Status::Unknown,
        }
    }

    pub fn yes(x: BigUint, y: BigUint) -> Self {
        let (x, y) = if x >= y { (x, y) } else { (y, x) };
        TwoSquaresVerdict::Yes { x, y }
    }

    pub fn bad_prime(p: BigUint, r: u64) -> Self {
        TwoSquaresVerdict::No { certificate: NoCertificate::BadPrime { p, r } }
    }

    pub fn witness(&self) -> Option<(&BigUint, &BigUint)> {
        match self {
            TwoSquaresVerdict::Yes { x, y } => Some((x, y)),
            _ => None,
        }
    }

    /// Checks the verdict's own invariants against `n`. Unknown verdicts
    /// only need a proper divisor that is 1 mod 4.
    pub fn verify(&self, n: &BigUint) -> bool {
        match self {
            TwoSquaresVerdict::Yes { x, y } => x >= y && &(x * x + y * y) == n,
            TwoSquaresVerdict::No { certificate } => certificate.verify(n),
            TwoSquaresVerdict::Unknown { blocking_cofactor } => {
                !blocking_cofactor.is_zero()
                    && (n % blocking_cofactor).is_zero()
                    && (blocking_cofactor % 4u32).to_u32() == Some(1)
            }
        }
    }
}

fn is_three_mod_four(p: &BigUint) -> bool {
    (p % 4u32).to_u32() == Some(3)
}

/// Decides whether `n` is a sum of two squares.
pub fn classify(n: &BigUint, budget: &EffortBudget) -> Result<TwoSquaresVerdict> {
    classify_detailed(n, budget).map(|(v, _)| v)
}

/// Like [`classify`], and also hands back whatever factorization was
/// computed on the way (partial if a bad prime stopped the search).
pub fn classify_detailed(
    n: &BigUint,
    budget: &EffortBudget,
) -> Result<(TwoSquaresVerdict, Factorization)> {
    if n.is_zero() {
        return Err(Error::Zero("classify input"));
    }
    let mut bad = None;
    let (f, stopped) = factorize_with(n, budget, |p| {
        if is_three_mod_four(p) {
            if let Ok(r) = exact_valuation(p, n) {
                if r % 2 == 1 {
                    bad = Some(r);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    if let (Some(p), Some(r)) = (stopped, bad) {
        return Ok((TwoSquaresVerdict::bad_prime(p, r), f));
    }
    let verdict = verdict_from_factorization(&f)?;
    Ok((verdict, f))
}

/// Verdict for a (possibly partial) factorization.
pub fn verdict_from_factorization(f: &Factorization) -> Result<TwoSquaresVerdict> {
    for (p, e) in &f.factors {
        // An unsplit cofactor may hide further copies of p.
        let r = if f.is_complete() { *e as u64 } else { exact_valuation(p, &f.value)? };
        if is_three_mod_four(p) && r % 2 == 1 {
            return Ok(TwoSquaresVerdict::bad_prime(p.clone(), r));
        }
    }
    if f.is_complete() {
        let (x, y) = represent(&f.value, f)?;
        return Ok(TwoSquaresVerdict::Yes { x, y });
    }
    let rest: BigUint = f.unfactored_parts.iter().product();
    let rest = if rest.is_one() { f.cofactor.clone() } else { rest };
    if is_three_mod_four(&rest) && rest.gcd(&(&f.value / &rest)).is_one() {
        return Ok(TwoSquaresVerdict::No {
            certificate: NoCertificate::Cofactor3Mod4 { cofactor: rest },
        });
    }
    Ok(TwoSquaresVerdict::Unknown { blocking_cofactor: rest })
}

/// Gaussian integer as `(re, im)`.
type Gauss = (BigInt, BigInt);

fn gmul(a: &Gauss, b: &Gauss) -> Gauss {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gpow(a: &Gauss, mut e: u32) -> Gauss {
    let mut base = a.clone();
    let mut acc = (BigInt::one(), BigInt::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc = gmul(&acc, &base);
        }
        base = gmul(&base, &base);
        e >>= 1;
    }
    acc
}

fn canonical(g: &Gauss) -> (BigUint, BigUint) {
    let a = g.0.abs().to_biguint().unwrap();
    let b = g.1.abs().to_biguint().unwrap();
    if a >= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// All representations reachable from `factorization`, capped.
pub fn representations(factorization: &Factorization) -> Result<BTreeSet<(BigUint, BigUint)>> {
    if !factorization.is_complete() {
        return Err(Error::IncompleteFactorization(factorization.value.to_string()));
    }
    let big = |v: &BigUint| BigInt::from_biguint(Sign::Plus, v.clone());
    let mut fixed: Gauss = (BigInt::one(), BigInt::zero());
    let mut splits: Vec<(Gauss, u32)> = Vec::new();
    for (p, e) in &factorization.factors {
        if p == &BigUint::from(2u32) {
            fixed = gmul(&fixed, &gpow(&(BigInt::one(), BigInt::one()), *e));
        } else if is_three_mod_four(p) {
            if e % 2 == 1 {
                return Err(Error::Precondition(format!("{p} ≡ 3 mod 4 occurs to odd power {e}")));
            }
            fixed = gmul(&fixed, &(big(p).pow(e / 2), BigInt::zero()));
        } else {
            let (x, y) = prime_as_two_squares(p)?;
            splits.push(((big(&x), big(&y)), *e));
        }
    }
    let combos = splits
        .iter()
        .try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1));
    let mut partial: Vec<Gauss> = vec![fixed];
    if combos.is_some_and(|c| c <= REPRESENTATION_CAP) {
        for (pi, e) in &splits {
            let conj = (pi.0.clone(), -&pi.1);
            let mut next = Vec::with_capacity(partial.len() * (*e as usize + 1));
            for i in 0..=*e {
                let piece = gmul(&gpow(pi, i), &gpow(&conj, e - i));
                for g in &partial {
                    next.push(gmul(g, &piece));
                }
            }
            partial = next;
        }
    } else {
        for (pi, e) in &splits {
            partial[0] = gmul(&partial[0], &gpow(pi, *e));
        }
    }
    Ok(partial.iter().map(canonical).collect())
}

/// Canonical representation: the valid pair with the largest `y`
/// (closest to balanced).
pub fn represent(n: &BigUint, factorization: &Factorization) -> Result<(BigUint, BigUint)> {
    if &factorization.value != n {
        return Err(Error::Precondition("factorization is of a different number".into()));
    }
    let reps = representations(factorization)?;
    let best = reps
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1))
        .ok_or_else(|| Error::Internal("no representation produced".into()))?;
    if &(&best.0 * &best.0 + &best.1 * &best.1) != n {
        return Err(Error::Internal(format!("bad representation for {n}")));
    }
    Ok(best)
}

/// Exhaustive search on machine words, largest `y <= x` first.
pub fn brute_force_u64(n: u64) -> Option<(u64, u64)> {
    let mut y = (n / 2).sqrt();
    loop {
        let rest = n - y * y;
        let x = rest.sqrt();
        if x * x == rest {
            return Some((x, y));
        }
        if y == 0 {
            return None;
        }
        y -= 1;
    }
}

/// Exhaustive oracle for `n <= 10^14`.
pub fn brute_force(n: &BigUint) -> Result<Option<(BigUint, BigUint)>> {
    let v = n
        .to_u64()
        .filter(|&v| v <= BRUTE_FORCE_MAX)
        .ok_or_else(|| Error::OutOfRange {
            what: "N",
            value: n.to_string(),
            expected: "<= 10^14",
        })?;
    Ok(brute_force_u64(v).map(|(x, y)| (BigUint::from(x), BigUint::from(y))))
}

/// `(a^2 + b^2)(c^2 + d^2) = (ac + bd)^2 + (ad - bc)^2`.
pub fn compose(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> (BigUint, BigUint) {
    let x = a * c + b * d;
    let (ad, bc) = (a * d, b * c);
    let y = if ad >= bc { ad - bc } else { bc - ad };
    if x >= y {
        (x, y)
    } else {
        (y, x)
    }
}
