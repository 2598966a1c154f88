//! Bases `a = p v^2` with `p = 1 (mod 4)` prime, and the polynomial family
//! `f(X)^p + 1 = g(X)^2 + h(X)^2`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{residue, ClassificationRecord, Classifier};
use crate::arith::{divisors_u64, is_prime_u64, perfect_square_root};
use crate::aurifeuillian::{aurifeuillian_pair, sots_of_phi};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::serde_dec;
use crate::two_squares::{prime_as_two_squares, Status};

/// `(p, v)` with `a = p v^2`, `p = 1 (mod 4)` prime not dividing `v`, or
/// `None` if `a` has another shape or does not factor within budget.
pub fn px2_form(classifier: &Classifier, a: &BigUint) -> Result<Option<(BigUint, BigUint)>> {
    if a < &BigUint::from(5u32) {
        return Ok(None);
    }
    let f = classifier.factor(a)?;
    if !f.is_complete() {
        return Ok(None);
    }
    let mut odd = f.factors.iter().filter(|(_, e)| e % 2 == 1);
    let (Some((p, e)), None) = (odd.next(), odd.next()) else {
        return Ok(None);
    };
    if *e != 1 || residue(p, 4) != 1 {
        return Ok(None);
    }
    let v = perfect_square_root(&(a / p)).expect("remaining exponents are even");
    Ok(Some((p.clone(), v)))
}

/// `Phi_{2 delta}(a) = x^2 + y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiWitness {
    pub delta: u64,
    #[serde(with = "serde_dec")]
    pub x: BigUint,
    #[serde(with = "serde_dec")]
    pub y: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Px2Report {
    #[serde(with = "serde_dec")]
    pub a: BigUint,
    #[serde(with = "serde_dec")]
    pub p: BigUint,
    #[serde(with = "serde_dec")]
    pub v: BigUint,
    pub n: u64,
    /// `a^n + 1`.
    pub base: ClassificationRecord,
    /// `a^{np} + 1`.
    pub lifted: ClassificationRecord,
    /// The factors `Phi_{2 delta}(a)` of `a^{np} + 1` missing from `a^n + 1`.
    pub new_factors: Vec<PhiWitness>,
}

impl Px2Report {
    pub fn statuses_match(&self) -> bool {
        self.base.status == self.lifted.status
    }
}

/// Decides `a^n + 1` and `a^{np} + 1` for `a = p v^2` and checks that they
/// agree. Errors if `a` is not of that shape or the two disagree.
pub fn px2_transfer(classifier: &Classifier, a: &BigUint, n: u64) -> Result<Px2Report> {
    if n.is_multiple_of(2) {
        return Err(Error::OutOfRange { what: "n", value: n.to_string(), expected: "odd" });
    }
    let (p, v) = px2_form(classifier, a)?
        .ok_or_else(|| Error::Precondition(format!("{a} is not p v^2 with p = 1 mod 4 prime")))?;
    let pu = p
        .to_i64()
        .ok_or_else(|| Error::OutOfRange { what: "p", value: p.to_string(), expected: "< 2^63" })?;
    let big_n = n
        .checked_mul(pu as u64)
        .ok_or_else(|| Error::OutOfRange { what: "n p", value: format!("{n} * {p}"), expected: "< 2^64" })?;
    let new_factors = divisors_u64(big_n)
        .into_iter()
        .filter(|d| !n.is_multiple_of(*d))
        .map(|delta| {
            let (x, y) = sots_of_phi(-pu, &v, 2 * delta)?;
            Ok(PhiWitness { delta, x, y })
        })
        .collect::<Result<Vec<_>>>()?;
    let base = classifier.decide(a, n)?;
    let lifted = classifier.decide(a, big_n)?;
    let report = Px2Report { a: a.clone(), p, v, n, base, lifted, new_factors };
    let decided = report.base.status != Status::Unknown && report.lifted.status != Status::Unknown;
    if decided && !report.statuses_match() {
        return Err(Error::Internal(format!("{a}^{n} + 1 and {a}^{big_n} + 1 disagree")));
    }
    Ok(report)
}

/// `A, B, C, f = p A^2` with `p A^2 + 1 = B^2 + C^2`, and `g, h` with
/// `f^p + 1 = g^2 + h^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFamily {
    pub p: u64,
    /// `p = u^2 + v^2`, `u` even.
    #[serde(with = "serde_dec")]
    pub u: BigUint,
    #[serde(with = "serde_dec")]
    pub v: BigUint,
    #[serde(rename = "A")]
    pub a: Polynomial,
    #[serde(rename = "B")]
    pub b: Polynomial,
    #[serde(rename = "C")]
    pub c: Polynomial,
    pub f: Polynomial,
    pub g: Polynomial,
    pub h: Polynomial,
}

fn poly_pow(base: &Polynomial, mut e: u64) -> Polynomial {
    let mut acc = Polynomial::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &b;
        }
        b = b.square();
        e >>= 1;
    }
    acc
}

pub fn poly_family(p: u64) -> Result<PolyFamily> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p % 4 != 1 {
        return Err(Error::OutOfRange { what: "p", value: p.to_string(), expected: "1 mod 4" });
    }
    let k = i64::try_from(p).map_err(|_| Error::OutOfRange {
        what: "p",
        value: p.to_string(),
        expected: "< 2^63",
    })?;
    let (x, y) = prime_as_two_squares(&BigUint::from(p))?;
    let (u, v) = if x.is_even() { (x, y) } else { (y, x) };
    let (ui, vi, pi) = (BigInt::from(u.clone()), BigInt::from(v.clone()), BigInt::from(p));
    let half_u = &ui / 2;
    let a = Polynomial::new(vec![BigInt::zero(), vi.clone(), &half_u * &pi]);
    let b = Polynomial::new(vec![BigInt::from(-1), BigInt::zero(), &half_u * &ui * &pi]);
    let c = Polynomial::new(vec![BigInt::zero(), pi.clone(), &half_u * &vi * &pi]);
    let f = a.square().scale(&pi);
    if &f + &Polynomial::one() != &b.square() + &c.square() {
        return Err(Error::Internal(format!("p A^2 + 1 != B^2 + C^2 for p = {p}")));
    }
    // Phi_{2p}(x) = F(x)^2 + p x^q G(x)^2 and at x = p A^2 the second term
    // is (p^{(q+1)/2} A^q G(x))^2.
    let pair = aurifeuillian_pair(-k, 2 * p)?;
    let q = pair.q;
    let ff = pair.f.compose(&f);
    let second = &poly_pow(&a, q).scale(&pi.pow(q.div_ceil(2) as u32)) * &pair.g.compose(&f);
    let g = &(&b * &ff) + &(&c * &second);
    let h = &(&b * &second) - &(&c * &ff);
    if &g.square() + &h.square() != &poly_pow(&f, p) + &Polynomial::one() {
        return Err(Error::Internal(format!("f^p + 1 != g^2 + h^2 for p = {p}")));
    }
    Ok(PolyFamily { p, u, v, a, b, c, f, g, h })
}
