//! Aurifeuillian pairs `Phi_n(x) = F(x)^2 - k x^q G(x)^2`.
//!
//! The pair is read off from a half-product over roots of `Phi_{2n}`:
//! for `n = 2 (mod 4)` every primitive `2n`-th root appears as `+-zeta^b`
//! with `0 < b < n`, and choosing the sign by the quadratic character of
//! discriminant `d(k)` gives
//!
//! ```text
//! R(z) = prod_b (z - chi(b) zeta^b),     R(z) R(-z) = Phi_n(z^2).
//! ```
//!
//! `R` has coefficients in `Q(sqrt k)`; its even part is `F(z^2)` and its odd
//! part is `sqrt(k) z^q G(z^2)`. All arithmetic happens in the group ring
//! `Z[t]/(t^{2n} - 1)` and is reduced modulo `Phi_{2n}(t)` at the end, so the
//! result is exact. The identity is re-verified by expansion before return.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, is_squarefree_i64, jacobi_i64, prime_factors_u64};
use crate::cyclotomic::{cyclotomic_poly, eval_cyclotomic};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AurifeuillianPair {
    pub k: i64,
    pub n: u64,
    pub q: u64,
    #[serde(rename = "F")]
    pub f: Polynomial,
    #[serde(rename = "G")]
    pub g: Polynomial,
}

/// Discriminant of `Q(sqrt k)` for squarefree `k != 1`.
pub fn discriminant(k: i64) -> i64 {
    if k.rem_euclid(4) == 1 {
        k
    } else {
        4 * k
    }
}

/// Checks the preconditions of [`aurifeuillian_pair`].
pub fn check_admissible(k: i64, n: u64) -> Result<()> {
    if k == 0 || k == 1 {
        return Err(Error::Inadmissible { k, n, reason: "k must be squarefree and not 0 or 1" });
    }
    if !is_squarefree_i64(k) {
        return Err(Error::NotSquarefree(k.to_string()));
    }
    if n % 4 != 2 {
        return Err(Error::Inadmissible { k, n, reason: "n must be 2 mod 4" });
    }
    if n == 2 {
        return Err(Error::Inadmissible { k, n, reason: "n = 2 has odd totient; F would not dominate G" });
    }
    let d = discriminant(k).unsigned_abs();
    if !(2 * n).is_multiple_of(d) || n.is_multiple_of(d) {
        return Err(Error::Inadmissible { k, n, reason: "need |d(k)| | 2n and |d(k)| not dividing n" });
    }
    Ok(())
}

/// `q = prod p^{e-1}` over the odd part of `n`.
pub fn q_of(n: u64) -> u64 {
    prime_factors_u64(n)
        .into_iter()
        .filter(|&(p, _)| p != 2)
        .map(|(p, e)| p.pow(e - 1))
        .product()
}

fn pair_cache() -> &'static RwLock<HashMap<(i64, u64), Arc<AurifeuillianPair>>> {
    static CACHE: OnceLock<RwLock<HashMap<(i64, u64), Arc<AurifeuillianPair>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn aurifeuillian_pair(k: i64, n: u64) -> Result<Arc<AurifeuillianPair>> {
    check_admissible(k, n)?;
    if let Some(p) = pair_cache().read().unwrap().get(&(k, n)) {
        return Ok(Arc::clone(p));
    }
    let pair = Arc::new(synthesize(k, n)?);
    pair_cache().write().unwrap().insert((k, n), Arc::clone(&pair));
    Ok(pair)
}

/// Element of `Z[t]/(t^m - 1)`.
type GroupElt = Vec<BigInt>;

fn rotate_scaled(x: &GroupElt, by: usize, sign: i8) -> GroupElt {
    let m = x.len();
    let mut out = vec![BigInt::zero(); m];
    for (i, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out[(i + by) % m] = if sign < 0 { -c } else { c.clone() };
        }
    }
    out
}

fn group_mul(x: &GroupElt, y: &GroupElt) -> GroupElt {
    let m = x.len();
    let mut out = vec![BigInt::zero(); m];
    for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            out[(i + j) % m] += a * b;
        }
    }
    out
}

/// Reduces modulo `Phi_m(t)` and insists the result is a rational integer.
fn to_integer(x: &GroupElt, phi: &Polynomial) -> Result<BigInt> {
    let (_, r) = Polynomial::new(x.clone()).div_rem_monic(phi)?;
    match r.degree() {
        None => Ok(BigInt::zero()),
        Some(0) => Ok(r.coeff(0)),
        Some(_) => Err(Error::Internal(format!("coefficient {r} is not rational"))),
    }
}

/// The real quadratic character of discriminant `4k` (with `k = 3 mod 4`)
/// at an odd argument.
fn chi(k: i64, b: u64) -> i8 {
    jacobi_i64(k, b)
}

fn synthesize(k: i64, n: u64) -> Result<AurifeuillianPair> {
    let d = discriminant(k);
    if d != 4 * k {
        // admissibility forces k = 3 mod 4; see check_admissible
        return Err(Error::Internal(format!("unexpected discriminant {d} for k = {k}")));
    }
    let m = (2 * n) as usize;
    let q = q_of(n);
    let phi_2n = cyclotomic_poly(2 * n)?;

    let mut r: Vec<GroupElt> = vec![{
        let mut one = vec![BigInt::zero(); m];
        one[0] = BigInt::one();
        one
    }];
    for b in (1..n).filter(|&b| gcd_u64(b, 2 * n) == 1) {
        let c = chi(k, b);
        let mut next = vec![vec![BigInt::zero(); m]; r.len() + 1];
        for (j, coeff) in r.iter().enumerate() {
            for (slot, v) in next[j + 1].iter_mut().zip(coeff) {
                *slot += v;
            }
            let term = rotate_scaled(coeff, b as usize, -c);
            for (slot, v) in next[j].iter_mut().zip(term) {
                *slot += v;
            }
        }
        r = next;
    }

    // Gauss sum of the character mod |d|, living in Z[zeta_{2n}].
    let dd = d.unsigned_abs();
    let step = (2 * n / dd) as usize;
    let mut tau = vec![BigInt::zero(); m];
    for a in (1..dd).step_by(2) {
        let c = chi(k, a);
        if c != 0 {
            tau[(a as usize * step) % m] += c as i64;
        }
    }

    let two_k = BigInt::from(2 * k);
    let mut f = Vec::new();
    let mut g = Vec::new();
    for (j, coeff) in r.iter().enumerate() {
        if j % 2 == 0 {
            f.push(to_integer(coeff, &phi_2n)?);
        } else if (j as u64) < q {
            if !to_integer(&group_mul(coeff, &tau), &phi_2n)?.is_zero() {
                return Err(Error::Internal(format!("odd coefficient {j} below q = {q} is nonzero")));
            }
        } else {
            let scaled = to_integer(&group_mul(coeff, &tau), &phi_2n)?;
            let (gj, rem) = scaled.div_rem(&two_k);
            if !rem.is_zero() {
                return Err(Error::Internal(format!("G coefficient {scaled}/{two_k} not integral")));
            }
            // index (j - q) / 2 of G
            let idx = (j - q as usize) / 2;
            if g.len() <= idx {
                g.resize(idx + 1, BigInt::zero());
            }
            g[idx] = gj;
        }
    }
    let mut f = Polynomial::new(f);
    let mut g = Polynomial::new(g);
    if f.coeff(0).is_negative() {
        f = -&f;
    }
    if g.leading().is_some_and(Signed::is_negative) {
        g = -&g;
    }
    let pair = AurifeuillianPair { k, n, q, f, g };
    verify_identity(&pair)?;
    Ok(pair)
}

/// `F^2 - k x^q G^2`.
pub fn expand(pair: &AurifeuillianPair) -> Polynomial {
    let kxq = Polynomial::monomial(BigInt::from(pair.k), pair.q as usize);
    &pair.f.square() - &(&kxq * &pair.g.square())
}

/// Checks the identity and the normalization.
pub fn verify_identity(pair: &AurifeuillianPair) -> Result<()> {
    let phi = cyclotomic_poly(pair.n)?;
    if expand(pair) != *phi {
        return Err(Error::Internal(format!("identity fails for (k, n) = ({}, {})", pair.k, pair.n)));
    }
    // F(0) = 1 fixes the sign of F. Its leading coefficient is then +1,
    // except for k = -1 with deg F odd, where F is anti-palindromic.
    let lead_ok = pair.f.leading().is_some_and(|c| c.is_one() || (pair.k == -1 && (-c).is_one()));
    if !pair.f.coeff(0).is_one() || !lead_ok {
        return Err(Error::Internal("F is not normalized".into()));
    }
    if pair.f.degree() <= pair.g.degree() {
        return Err(Error::Internal("deg F must exceed deg G".into()));
    }
    if !pair.g.leading().is_some_and(Signed::is_positive) {
        return Err(Error::Internal("G is not normalized".into()));
    }
    Ok(())
}

fn nat(v: BigInt) -> Result<BigUint> {
    v.to_biguint().ok_or_else(|| Error::Internal("negative value in split".into()))
}

/// Pieces `(F(x), c)` at `x = |k| v^2`, where `c = |k|^{(q+1)/2} v^q G(x)`.
fn evaluate(pair: &AurifeuillianPair, v: &BigUint) -> (BigInt, BigInt, BigInt) {
    let kabs = BigInt::from(pair.k.unsigned_abs());
    let vi = BigInt::from_biguint(Sign::Plus, v.clone());
    let x = &kabs * &vi * &vi;
    let scale = kabs.pow(pair.q.div_ceil(2) as u32) * vi.pow(pair.q as u32);
    let fx = pair.f.eval(&x);
    let c = scale * pair.g.eval(&x);
    (x, fx, c)
}

/// For `k < 0`: `Phi_n(-k v^2) = F^2 + (|k|^{(q+1)/2} v^q G)^2`, returned as
/// absolute values `(x, y)` in the order given by the identity.
pub fn sots_of_phi(k: i64, v: &BigUint, n: u64) -> Result<(BigUint, BigUint)> {
    if k >= 0 {
        return Err(Error::Inadmissible { k, n, reason: "sums of squares need k < 0" });
    }
    if v.is_zero() {
        return Err(Error::Zero("v"));
    }
    let pair = aurifeuillian_pair(k, n)?;
    let (x, fx, c) = evaluate(&pair, v);
    let (a, b) = (nat(fx.abs())?, nat(c.abs())?);
    let phi = eval_cyclotomic(n, &x)?;
    if BigInt::from_biguint(Sign::Plus, &a * &a + &b * &b) != phi {
        return Err(Error::Internal(format!("sots_of_phi({k}, {v}, {n}) does not sum to Phi_n")));
    }
    Ok((a, b))
}

/// For `k > 0`: the coprime split `Phi_n(k v^2) = f g`.
pub fn aurifeuillian_split(k: i64, v: &BigUint, n: u64) -> Result<(BigUint, BigUint)> {
    if k <= 0 {
        return Err(Error::Inadmissible { k, n, reason: "the split needs k > 0" });
    }
    if v.is_zero() {
        return Err(Error::Zero("v"));
    }
    let pair = aurifeuillian_pair(k, n)?;
    let (x, fx, c) = evaluate(&pair, v);
    let f = nat(&fx + &c)?;
    let g = nat(&fx - &c)?;
    if BigInt::from_biguint(Sign::Plus, &f * &g) != eval_cyclotomic(n, &x)? {
        return Err(Error::Internal(format!("split of Phi_{n}({x}) does not multiply back")));
    }
    Ok((f, g))
}

/// All admissible `(k, n)` with `|k| <= k_max` and `n <= n_max`.
pub fn admissible_pairs(k_max: i64, n_max: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    for n in (6..=n_max).filter(|n| n % 4 == 2) {
        for k in -k_max..=k_max {
            if check_admissible(k, n).is_ok() {
                out.push((k, n));
            }
        }
    }
    out
}
