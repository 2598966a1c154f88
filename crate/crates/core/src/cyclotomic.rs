//! Cyclotomic polynomials, their values, and the factorization of `a^n + 1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors_u64, exact_valuation, is_probable_prime, mobius, multiplicative_order};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::serde_dec;

/// Degree at or above which `eval_cyclotomic` switches to the quotient form.
pub const HORNER_DEGREE_LIMIT: u64 = 512;

fn poly_cache() -> &'static RwLock<HashMap<u64, Arc<Polynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Polynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`th cyclotomic polynomial, by the Möbius product
/// `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<Polynomial>> {
    if n == 0 {
        return Err(Error::Zero("cyclotomic index"));
    }
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(mobius_product(n)?);
    poly_cache().write().unwrap().insert(n, Arc::clone(&p));
    Ok(p)
}

fn mobius_product(n: u64) -> Result<Polynomial> {
    let divs = divisors_u64(n);
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for &d in &divs {
        match mobius(n / d) {
            1 => up.push(d as usize),
            -1 => down.push(d as usize),
            _ => {}
        }
    }
    let top: usize = up.iter().sum();
    let mut c = vec![BigInt::zero(); top + 1];
    c[0] = BigInt::one();
    let mut len = 1;
    // multiply by (x^d - 1): c'[i] = c[i - d] - c[i]
    for d in up {
        len += d;
        for i in (0..len).rev() {
            let shifted = if i >= d { c[i - d].clone() } else { BigInt::zero() };
            c[i] = shifted - &c[i];
        }
    }
    // divide by (x^d - 1): q[i] = q[i - d] - c[i]
    for d in down {
        let qlen = len - d;
        let mut q = vec![BigInt::zero(); qlen];
        for i in 0..qlen {
            q[i] = if i >= d { q[i - d].clone() } else { BigInt::zero() } - &c[i];
        }
        for i in qlen..len {
            let expect = if i >= d { q[i - d].clone() } else { BigInt::zero() };
            if expect != c[i] {
                return Err(Error::Internal(format!("inexact division building cyclotomic({n})")));
            }
        }
        c[..qlen].clone_from_slice(&q);
        for x in c[qlen..len].iter_mut() {
            *x = BigInt::zero();
        }
        len = qlen;
    }
    c.truncate(len);
    Ok(Polynomial::new(c))
}

/// `Phi_n(a)` exactly.
pub fn eval_cyclotomic(n: u64, a: &BigInt) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Zero("cyclotomic index"));
    }
    if crate::arith::euler_phi(n) < HORNER_DEGREE_LIMIT || a.abs() <= BigInt::one() {
        return eval_horner(n, a);
    }
    eval_quotient(n, a)
}

pub fn eval_horner(n: u64, a: &BigInt) -> Result<BigInt> {
    Ok(cyclotomic_poly(n)?.eval(a))
}

/// `prod_{d | n} (a^d - 1)^{mu(n/d)}` with one exact division at the end.
/// Requires `|a| >= 2` so that no factor vanishes.
pub fn eval_quotient(n: u64, a: &BigInt) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Zero("cyclotomic index"));
    }
    if a.abs() <= BigInt::one() {
        return Err(Error::Precondition("quotient form needs |a| >= 2".into()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors_u64(n) {
        let term = a.pow(d as u32) - 1;
        match mobius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("quotient form for Phi_{n}({a}) left a remainder")));
    }
    Ok(q)
}

fn to_natural(v: BigInt) -> Result<BigUint> {
    v.to_biguint()
        .ok_or_else(|| Error::Internal("cyclotomic value unexpectedly negative".into()))
}

/// `Phi_{2 delta}(a)` for every `delta | n`, in increasing `delta` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactorList {
    #[serde(with = "serde_dec")]
    pub a: BigUint,
    pub n: u64,
    pub entries: Vec<CyclotomicFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactor {
    pub delta: u64,
    #[serde(with = "serde_dec")]
    pub value: BigUint,
}

impl CyclotomicFactorList {
    pub fn product(&self) -> BigUint {
        self.entries.iter().map(|e| &e.value).product()
    }
}

/// `a^n + 1 = prod_{delta | n} Phi_{2 delta}(a)` for odd `n`.
pub fn factor_a_n_plus_1(a: &BigUint, n: u64) -> Result<CyclotomicFactorList> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::OutOfRange { what: "n", value: n.to_string(), expected: "odd and >= 1" });
    }
    if a < &BigUint::from(2u32) {
        return Err(Error::OutOfRange { what: "a", value: a.to_string(), expected: ">= 2" });
    }
    let ai = BigInt::from_biguint(Sign::Plus, a.clone());
    let entries = divisors_u64(n)
        .into_iter()
        .map(|delta| {
            Ok(CyclotomicFactor { delta, value: to_natural(eval_cyclotomic(2 * delta, &ai)?)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let list = CyclotomicFactorList { a: a.clone(), n, entries };
    let exponent = u32::try_from(n).map_err(|_| Error::OutOfRange {
        what: "n",
        value: n.to_string(),
        expected: "< 2^32",
    })?;
    if list.product() != a.pow(exponent) + 1u32 {
        return Err(Error::Internal(format!("cyclotomic product mismatch for {a}^{n} + 1")));
    }
    Ok(list)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeDivisorKind {
    NotDivisor,
    PrimitiveDivisor,
    IntrinsicDivisor,
}

/// Whether `p` divides `Phi_n(a)`, and how, from `ord_p(a)` alone:
/// `p | Phi_n(a)` iff `n = ord_p(a) * p^k` for some `k >= 0`.
pub fn prime_in_cyclotomic(p: &BigUint, n: u64, a: &BigUint) -> Result<PrimeDivisorKind> {
    if !is_probable_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if n < 2 {
        return Err(Error::OutOfRange { what: "n", value: n.to_string(), expected: ">= 2" });
    }
    if (a % p).is_zero() {
        return Ok(PrimeDivisorKind::NotDivisor);
    }
    let ord = multiplicative_order(&BigInt::from_biguint(Sign::Plus, a.clone()), p)?;
    let nb = BigUint::from(n);
    if nb == ord {
        return Ok(PrimeDivisorKind::PrimitiveDivisor);
    }
    if !(&nb % &ord).is_zero() {
        return Ok(PrimeDivisorKind::NotDivisor);
    }
    let mut rest = nb / ord;
    while (&rest % p).is_zero() {
        rest /= p;
    }
    Ok(if rest.is_one() { PrimeDivisorKind::IntrinsicDivisor } else { PrimeDivisorKind::NotDivisor })
}

/// `v_p(a^n + 1)` predicted from `v_p(a^m + 1) = e` as `e + v_p(n/m)`.
pub fn predict_valuation(p: &BigUint, a: &BigUint, m: u64, n: u64) -> Result<u64> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::Precondition(format!("m = {m} must divide n = {n}")));
    }
    if (n / m).is_multiple_of(2) {
        return Err(Error::Precondition(format!("n/m = {} must be odd", n / m)));
    }
    let m32 = u32::try_from(m).map_err(|_| Error::OutOfRange {
        what: "m",
        value: m.to_string(),
        expected: "< 2^32",
    })?;
    let base = a.pow(m32) + 1u32;
    let e = exact_valuation(p, &base)?;
    if e == 0 {
        return Err(Error::Precondition(format!("{p} does not divide {a}^{m} + 1")));
    }
    let k = exact_valuation(p, &BigUint::from(n / m))?;
    Ok(e + k)
}

/// Linear coefficient of `Phi_n`, as a plain integer.
pub fn linear_coefficient(n: u64) -> Result<i64> {
    let c = cyclotomic_poly(n)?.coeff(1);
    c.to_i64().ok_or_else(|| Error::Internal("linear coefficient overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_up_to, gcd_u64};
    use proptest::prelude::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn bu(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn spec_polynomials() {
        assert_eq!(*cyclotomic_poly(6).unwrap(), Polynomial::from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(1).unwrap(), Polynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(10).unwrap(), Polynomial::from_i64(&[1, -1, 1, -1, 1]));
        assert!(cyclotomic_poly(0).is_err());
        // Phi_105 is the first with a coefficient of absolute value 2.
        let p105 = cyclotomic_poly(105).unwrap();
        assert!(p105.coeffs().iter().any(|c| *c == bi(-2)));
    }

    #[test]
    fn spec_values() {
        assert_eq!(eval_cyclotomic(14, &bi(6)).unwrap(), bi(39991));
        assert_eq!(eval_cyclotomic(9, &bi(1)).unwrap(), bi(3));
        for a in -5..20 {
            assert_eq!(eval_cyclotomic(2, &bi(a)).unwrap(), bi(a + 1));
        }
    }

    #[test]
    fn prime_power_at_one() {
        for p in [2u64, 3, 5, 7, 11] {
            for k in 1..4 {
                assert_eq!(eval_cyclotomic(p.pow(k), &bi(1)).unwrap(), bi(p as i64));
            }
        }
    }

    #[test]
    fn spec_factor_lists() {
        let l = factor_a_n_plus_1(&bu(3), 15).unwrap();
        let vals: Vec<_> = l.entries.iter().map(|e| e.value.clone()).collect();
        assert_eq!(vals, vec![bu(4), bu(7), bu(61), bu(8401)]);
        assert_eq!(l.product(), bu(14_348_908));
        let l = factor_a_n_plus_1(&bu(6), 7).unwrap();
        assert_eq!(l.entries.len(), 2);
        assert_eq!(l.entries[1].value, bu(39991));
        let l = factor_a_n_plus_1(&bu(10), 1).unwrap();
        assert_eq!(l.entries[0].value, bu(11));
        assert!(factor_a_n_plus_1(&bu(3), 4).is_err());
    }

    #[test]
    fn quotient_and_horner_agree() {
        for n in 1..=120 {
            for a in [-7i64, -2, 2, 3, 10] {
                assert_eq!(eval_horner(n, &bi(a)).unwrap(), eval_quotient(n, &bi(a)).unwrap(), "n={n} a={a}");
            }
        }
        // above the degree limit the dispatcher takes the quotient path
        let n = 1031 * 2;
        assert_eq!(eval_cyclotomic(n, &bi(3)).unwrap(), eval_horner(n, &bi(3)).unwrap());
    }

    #[test]
    fn product_identity() {
        for n in 1..=60u64 {
            for a in 2..=10i64 {
                let prod: BigInt = divisors_u64(n)
                    .into_iter()
                    .map(|d| eval_cyclotomic(d, &bi(a)).unwrap())
                    .product();
                assert_eq!(prod, bi(a).pow(n as u32) - 1, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn reflection() {
        // n = 1 is the one sign exception: Phi_2(x) = x + 1 = -Phi_1(-x)
        assert_eq!(*cyclotomic_poly(2).unwrap(), -&cyclotomic_poly(1).unwrap().reflect());
        for n in (3..=59u64).step_by(2) {
            let lhs = (*cyclotomic_poly(2 * n).unwrap()).clone();
            assert_eq!(lhs, cyclotomic_poly(n).unwrap().reflect(), "n={n}");
            for a in 2..8 {
                assert_eq!(eval_cyclotomic(2 * n, &bi(a)).unwrap(), eval_cyclotomic(n, &bi(-a)).unwrap());
            }
        }
    }

    #[test]
    fn linear_coefficient_is_minus_mobius() {
        for n in 2..=200 {
            assert_eq!(linear_coefficient(n).unwrap(), -(mobius(n) as i64), "n={n}");
        }
    }

    #[test]
    fn prime_classification_examples() {
        assert_eq!(prime_in_cyclotomic(&bu(7), 14, &bu(6)).unwrap(), PrimeDivisorKind::IntrinsicDivisor);
        assert_eq!(prime_in_cyclotomic(&bu(5), 14, &bu(6)).unwrap(), PrimeDivisorKind::NotDivisor);
        assert_eq!(prime_in_cyclotomic(&bu(29), 14, &bu(6)).unwrap(), PrimeDivisorKind::PrimitiveDivisor);
        assert_eq!(prime_in_cyclotomic(&bu(3), 5, &bu(6)).unwrap(), PrimeDivisorKind::NotDivisor);
        assert!(prime_in_cyclotomic(&bu(9), 5, &bu(2)).is_err());
    }

    #[test]
    fn prime_classification_grid() {
        for p in primes_up_to(97) {
            let pb = bu(p);
            for a in 2..=20u64 {
                if gcd_u64(a, p) != 1 {
                    continue;
                }
                for n in 2..=60u64 {
                    let kind = prime_in_cyclotomic(&pb, n, &bu(a)).unwrap();
                    let v = eval_cyclotomic(n, &bi(a as i64)).unwrap().to_biguint().unwrap();
                    let divides = (&v % &pb).is_zero();
                    assert_eq!(divides, kind != PrimeDivisorKind::NotDivisor, "p={p} a={a} n={n}");
                    if kind == PrimeDivisorKind::IntrinsicDivisor && n >= 3 {
                        assert!(!(&v % (&pb * &pb)).is_zero(), "p^2 | Phi_{n}({a}) with p={p}");
                    }
                    if kind == PrimeDivisorKind::PrimitiveDivisor {
                        assert_ne!(n % p, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(predict_valuation(&bu(7), &bu(6), 1, 7).unwrap(), 2);
        assert_eq!(predict_valuation(&bu(3), &bu(11), 3, 27).unwrap(), 4);
        assert_eq!(exact_valuation(&bu(3), &(bu(11).pow(27) + 1u32)).unwrap(), 4);
        assert_eq!(predict_valuation(&bu(7), &bu(6), 7, 7).unwrap(), 2);
        assert!(predict_valuation(&bu(5), &bu(6), 1, 7).is_err());
        assert!(predict_valuation(&bu(7), &bu(6), 2, 7).is_err());
    }

    #[test]
    fn divisibility_of_alternating_sum() {
        // b | x + 1 implies: b | x^{n-1} - x^{n-2} + ... + 1 exactly when b | n
        for x in 1..=50u64 {
            for n in (1..=45u64).step_by(2) {
                let s = (bu(x).pow(n as u32) + 1u32) / bu(x + 1);
                for b in 1..=50u64 {
                    if (x + 1) % b != 0 {
                        continue;
                    }
                    assert_eq!((&s % b).is_zero(), n % b == 0, "x={x} n={n} b={b}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn valuation_lifting(
            pi in 0usize..10,
            t in 0u64..20,
            pick in 0usize..64,
            m in prop::sample::select(vec![1u64, 3, 5, 7, 9, 15]),
            c in prop::sample::select(vec![1u64, 3, 5, 7, 11, 13]),
            k in 0u32..3,
        ) {
            let p = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31][pi];
            // residues r with r^m = -1 mod p, so that p | a^m + 1
            let roots: Vec<u64> = (1..p)
                .filter(|&r| (bu(r).pow(m as u32) + 1u32) % p == bu(0))
                .collect();
            prop_assume!(!roots.is_empty());
            let a = roots[pick % roots.len()] + p * t;
            prop_assume!(a >= 2 && c % p != 0);
            let n = m * c * p.pow(k);
            prop_assume!(n <= 500);
            let predicted = predict_valuation(&bu(p), &bu(a), m, n).unwrap();
            let direct = exact_valuation(&bu(p), &(bu(a).pow(n as u32) + 1u32)).unwrap();
            prop_assert_eq!(predicted, direct);
        }
    }
}
