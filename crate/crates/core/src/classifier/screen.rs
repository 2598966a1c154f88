//! Necessary conditions that need at most the factorizations of `a`,
//! `a + 1` and the exponent, plus whatever divisor verdicts are cached.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{m_invariant, residue, Certificate, ClassificationRecord, Classifier, Rule};
use crate::arith::{divisors_u64, prime_factors_u64, EffortBudget};
use crate::error::Result;
use crate::two_squares::Status;

/// Runs the screens for `a^n + 1` with an empty cache. `Some` is a
/// rejection; `None` means every screen passed.
pub fn screen(a: &BigUint, n: u64, budget: &EffortBudget) -> Result<Option<ClassificationRecord>> {
    Classifier::new(*budget).screen(a, n)
}

impl Classifier {
    /// Screens in cost order; the first rejection wins. Cached divisor
    /// verdicts feed the propagation rules, missing or unknown ones are
    /// skipped.
    pub fn screen(&self, a: &BigUint, n: u64) -> Result<Option<ClassificationRecord>> {
        super::validate(a, n)?;
        if n.is_multiple_of(2) || crate::arith::perfect_square_root(a).is_some() {
            return Ok(None);
        }
        let no = |rule, certificate| Ok(Some(ClassificationRecord::no(a, n, rule, certificate)));

        if residue(a, 8) == 5 {
            return no(Rule::FiveModEight, Certificate::OddPartThreeMod4 { two_adic: 1 });
        }
        if residue(a, 4) == 3 {
            let a1 = a + 1u32;
            let s = a1.trailing_zeros().expect("a + 1 > 0");
            let odd = residue(&(&a1 >> s), 4);
            if (n % 4) as u32 != odd {
                return no(Rule::CongruenceMod4, Certificate::OddPartThreeMod4 { two_adic: s });
            }
        }
        if a.is_even() {
            let f = self.factor(&(a + 1u32))?;
            if f.is_complete() {
                let primes: Vec<BigUint> = f
                    .factors
                    .iter()
                    .filter(|(p, e)| residue(p, 4) == 3 && e % 2 == 1)
                    .map(|(p, _)| p.clone())
                    .collect();
                if primes.len() >= 2 || (primes.len() == 1 && primes[0] != BigUint::from(n)) {
                    return no(Rule::EvenBase, Certificate::BadPrimesOfAPlusOne { primes });
                }
            }
        }
        if residue(a, 4) == 0 {
            let x = a / 4u32;
            if residue(&x, 4) == 3 && x <= BigUint::from(n) && (BigUint::from(n) % &x).is_zero() {
                let f = self.factor(&x)?;
                if f.is_complete() && f.factors.iter().all(|(_, e)| *e == 1) {
                    return no(Rule::FourX, Certificate::FourX { x });
                }
            }
        }
        if residue(a, 4) == 3 {
            if let Some(r) = self.screen_three_mod_four(a, n)? {
                return Ok(Some(r));
            }
        }
        self.propagate(a, n)
    }

    fn screen_three_mod_four(&self, a: &BigUint, n: u64) -> Result<Option<ClassificationRecord>> {
        let no = |rule, certificate| Ok(Some(ClassificationRecord::no(a, n, rule, certificate)));
        let f = self.factor(&(a + 1u32))?;
        if !f.is_complete() {
            return Ok(None);
        }
        let m = m_invariant::m_from_factorization(a, &f)?.m;
        if !(BigUint::from(n) % &m).is_zero() {
            return no(Rule::MDividesN, Certificate::MDoesNotDivide { m });
        }
        let mu = m.to_u64().expect("m divides n");
        let quotient = n / mu;
        if let Some((p, r)) = prime_factors_u64(quotient)
            .into_iter()
            .find(|(p, r)| p % 4 == 3 && r % 2 == 1)
        {
            return no(Rule::ThreeModFour, Certificate::QuotientNotSots { m, p, r: r as u64 });
        }
        for (p, e) in prime_factors_u64(n) {
            if p % 4 == 3 && e >= 2 {
                let reduced = n / (p * p);
                let pb = BigUint::from(p);
                if !(a.modpow(&BigUint::from(reduced), &pb) + 1u32).is_multiple_of(&pb) {
                    return no(Rule::ThreeModFour, Certificate::SquareClause { p, reduced });
                }
            }
        }
        Ok(None)
    }

    /// Rules that read cached verdicts of `a^delta + 1`, `delta | n`.
    fn propagate(&self, a: &BigUint, n: u64) -> Result<Option<ClassificationRecord>> {
        let below: Vec<ClassificationRecord> = divisors_u64(n)
            .into_iter()
            .filter(|&d| d < n)
            .filter_map(|d| self.cached(a, d))
            .filter(|r| r.status == Status::No)
            .collect();
        if below.is_empty() {
            return Ok(None);
        }
        for r in &below {
            if let Certificate::BadPrime { p, r: e } = &r.certificate {
                let lifted = e + crate::arith::exact_valuation(p, &BigUint::from(n / r.n))?;
                if lifted % 2 == 1 {
                    return Ok(Some(ClassificationRecord::no(
                        a,
                        n,
                        Rule::DivisorBadPrime,
                        Certificate::BadPrime { p: p.clone(), r: lifted },
                    )));
                }
            }
        }
        let divisor = |rule, r: &ClassificationRecord| {
            Ok(Some(ClassificationRecord::no(
                a,
                n,
                rule,
                Certificate::Divisor { delta: r.n, inner: Box::new(r.clone()) },
            )))
        };
        if residue(a, 8) == 1 {
            return divisor(Rule::OneModEight, &below[0]);
        }
        if a.is_even() {
            let f = self.factor(&(a + 1u32))?;
            let sots = f.is_complete()
                && f.factors.iter().all(|(p, e)| residue(p, 4) != 3 || e % 2 == 0);
            if sots {
                return divisor(Rule::EvenBase, &below[0]);
            }
        }
        if residue(a, 4) == 3 {
            let f = self.factor(&(a + 1u32))?;
            if !f.is_complete() {
                return Ok(None);
            }
            let mi = m_invariant::m_from_factorization(a, &f)?;
            let m = mi.m.to_u64().filter(|m| n.is_multiple_of(*m));
            if let Some(m) = m {
                for r in &below {
                    let sots_cofactor = r.n % m == 0
                        && crate::two_squares::brute_force_u64(r.n / m).is_some();
                    if sots_cofactor {
                        return divisor(Rule::ThreeModFour, r);
                    }
                }
            }
        }
        Ok(None)
    }
}
