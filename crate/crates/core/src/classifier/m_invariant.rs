use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::residue;
use crate::arith::{factorize, EffortBudget, Factorization};
use crate::error::{Error, Result};
use crate::serde_dec;

/// Skip the exhaustive minimality check above this many divisors of `a + 1`.
const MINIMALITY_DIVISOR_CAP: usize = 1 << 16;

/// The least `m` with `(a + 1)/m` a sum of two squares, for `a = 3 (mod 4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MInvariant {
    #[serde(with = "serde_dec")]
    pub a: BigUint,
    #[serde(with = "serde_dec")]
    pub m: BigUint,
    /// The primes of `m`: those `3 mod 4` dividing `a + 1` to an odd power.
    #[serde(with = "serde_dec::list")]
    pub primes: Vec<BigUint>,
}

pub fn compute_m(a: &BigUint, budget: &EffortBudget) -> Result<MInvariant> {
    if residue(a, 4) != 3 {
        return Err(Error::Precondition(format!("{a} is not 3 mod 4")));
    }
    m_from_factorization(a, &factorize(&(a + 1u32), budget)?)
}

pub(crate) fn m_from_factorization(a: &BigUint, f: &Factorization) -> Result<MInvariant> {
    if residue(a, 4) != 3 {
        return Err(Error::Precondition(format!("{a} is not 3 mod 4")));
    }
    if f.value != a + 1u32 {
        return Err(Error::Precondition("factorization is not of a + 1".into()));
    }
    if !f.is_complete() {
        return Err(Error::IncompleteFactorization(f.value.to_string()));
    }
    let primes: Vec<BigUint> = f
        .factors
        .iter()
        .filter(|(p, e)| residue(p, 4) == 3 && e % 2 == 1)
        .map(|(p, _)| p.clone())
        .collect();
    let m: BigUint = primes.iter().product();
    check_minimal(f, &m)?;
    Ok(MInvariant { a: a.clone(), m, primes })
}

/// No divisor `d < m` of `a + 1` leaves a quotient that is a sum of two
/// squares.
fn check_minimal(f: &Factorization, m: &BigUint) -> Result<()> {
    let count = f
        .factors
        .iter()
        .try_fold(1usize, |acc, (_, e)| acc.checked_mul(*e as usize + 1));
    if count.is_none_or(|c| c > MINIMALITY_DIVISOR_CAP) {
        return Ok(());
    }
    let mut divisors: Vec<(BigUint, bool)> = vec![(BigUint::one(), true)];
    for (p, e) in &f.factors {
        let three = residue(p, 4) == 3;
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for (d, ok) in &divisors {
            let mut pk = BigUint::one();
            for k in 0..=*e {
                next.push((d * &pk, *ok && (!three || (e - k) % 2 == 0)));
                pk *= p;
            }
        }
        divisors = next;
    }
    match divisors.into_iter().find(|(d, ok)| *ok && d < m) {
        Some((d, _)) => Err(Error::Internal(format!("{} / {d} is already a sum of two squares", f.value))),
        None => Ok(()),
    }
}
