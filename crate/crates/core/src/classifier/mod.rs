//! Deciding `a^n + 1` for odd `n` by theorem dispatch.
//!
//! `decide` tries, in order: the even-exponent and perfect-square fast
//! paths, the cheap screens, the same screens again once every proper
//! divisor `delta | n` has been decided, the transfer for `a = p v^2`, and
//! finally factoring each `Phi_{2 delta}(a)` on its own.

mod chart;
mod m_invariant;
mod px2;
mod screen;
mod witness;

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use chart::{chart, render_text, ChartRow, Property, UnknownCell};
pub use m_invariant::{compute_m, MInvariant};
pub use px2::{poly_family, px2_form, px2_transfer, PhiWitness, PolyFamily, Px2Report};
pub use screen::screen;
pub use witness::{chi, chi_factored, witness_nonsots, NonSotsWitness, WITNESS_SEARCH_LIMIT};

use crate::arith::{
    divisors_u64, exact_valuation, factorize_with, is_probable_prime, perfect_square_root,
    EffortBudget, Factorization,
};
use crate::aurifeuillian::sots_of_phi;
use crate::cyclotomic::factor_a_n_plus_1;
use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::serde_dec;
use crate::two_squares::{
    compose, verdict_from_factorization, NoCertificate, Status, TwoSquaresVerdict,
};

/// What settled a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "Theorem-1")]
    PerfectSquare,
    #[serde(rename = "even-exponent")]
    EvenExponent,
    #[serde(rename = "Theorem-2")]
    EvenBase,
    #[serde(rename = "Theorem-3")]
    FourX,
    #[serde(rename = "Theorem-4")]
    OneModEight,
    #[serde(rename = "Theorem-5")]
    FiveModEight,
    #[serde(rename = "Theorem-6")]
    ThreeModFour,
    #[serde(rename = "Theorem-7")]
    Px2,
    /// `n = m (mod 4)` for `a = 3 (mod 4)`.
    #[serde(rename = "n-congruent-m-mod-4")]
    CongruenceMod4,
    #[serde(rename = "m-divides-n")]
    MDividesN,
    /// `q = 3 (mod 4)` with `(a/q) = -1` dividing `a^n + 1` to an odd power.
    #[serde(rename = "non-residue-valuation")]
    NonResidue,
    /// A bad prime of `a^delta + 1` lifted to `a^n + 1`.
    #[serde(rename = "divisor-bad-prime")]
    DivisorBadPrime,
    #[serde(rename = "factorization")]
    Factorization,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::PerfectSquare => "Theorem-1",
            Rule::EvenExponent => "even-exponent",
            Rule::EvenBase => "Theorem-2",
            Rule::FourX => "Theorem-3",
            Rule::OneModEight => "Theorem-4",
            Rule::FiveModEight => "Theorem-5",
            Rule::ThreeModFour => "Theorem-6",
            Rule::Px2 => "Theorem-7",
            Rule::CongruenceMod4 => "n-congruent-m-mod-4",
            Rule::MDividesN => "m-divides-n",
            Rule::NonResidue => "non-residue-valuation",
            Rule::DivisorBadPrime => "divisor-bad-prime",
            Rule::Factorization => "factorization",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Witness {
        #[serde(with = "serde_dec")]
        x: BigUint,
        #[serde(with = "serde_dec")]
        y: BigUint,
    },
    BadPrime {
        #[serde(with = "serde_dec")]
        p: BigUint,
        r: u64,
    },
    Cofactor3Mod4 {
        #[serde(with = "serde_dec")]
        cofactor: BigUint,
    },
    /// `2^t || a^n + 1` and `(a^n + 1) / 2^t = 3 (mod 4)`.
    OddPartThreeMod4 { two_adic: u64 },
    /// Primes `3 mod 4` dividing `a + 1` to an odd power, `a` even.
    BadPrimesOfAPlusOne {
        #[serde(with = "serde_dec::list")]
        primes: Vec<BigUint>,
    },
    /// `a = 4x`, `x = 3 (mod 4)` squarefree, `x | n`.
    FourX {
        #[serde(with = "serde_dec")]
        x: BigUint,
    },
    MDoesNotDivide {
        #[serde(with = "serde_dec")]
        m: BigUint,
    },
    /// `p^r || n/m` with `p = 3 (mod 4)`, `r` odd.
    QuotientNotSots {
        #[serde(with = "serde_dec")]
        m: BigUint,
        p: u64,
        r: u64,
    },
    /// `n = reduced * p^2`, `p = 3 (mod 4)`, and `p` does not divide
    /// `a^reduced + 1`.
    SquareClause { p: u64, reduced: u64 },
    /// `a^delta + 1` is not a sum of two squares, and the rule carries that
    /// to every multiple.
    Divisor { delta: u64, inner: Box<ClassificationRecord> },
    /// `a = p v^2` and `n = reduced * p`.
    Transfer {
        #[serde(with = "serde_dec")]
        p: BigUint,
        #[serde(with = "serde_dec")]
        v: BigUint,
        reduced: u64,
        inner: Box<ClassificationRecord>,
    },
    Blocking {
        #[serde(with = "serde_dec")]
        cofactor: BigUint,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    #[serde(with = "serde_dec")]
    pub a: BigUint,
    pub n: u64,
    pub status: Status,
    pub rule: Rule,
    pub certificate: Certificate,
}

fn residue(a: &BigUint, m: u32) -> u32 {
    (a % m).to_u32().expect("residue below a u32 modulus")
}

pub(crate) fn power_plus_one(a: &BigUint, n: u64) -> Result<BigUint> {
    let e = u32::try_from(n).map_err(|_| Error::OutOfRange {
        what: "n",
        value: n.to_string(),
        expected: "< 2^32",
    })?;
    Ok(a.pow(e) + 1u32)
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn is_prime_3_mod_4(p: &BigUint) -> bool {
    residue(p, 4) == 3 && is_probable_prime(p)
}

impl ClassificationRecord {
    fn new(a: &BigUint, n: u64, status: Status, rule: Rule, certificate: Certificate) -> Self {
        ClassificationRecord { a: a.clone(), n, status, rule, certificate }
    }

    fn yes(a: &BigUint, n: u64, rule: Rule, x: BigUint, y: BigUint) -> Self {
        let (x, y) = if x >= y { (x, y) } else { (y, x) };
        Self::new(a, n, Status::Yes, rule, Certificate::Witness { x, y })
    }

    fn no(a: &BigUint, n: u64, rule: Rule, certificate: Certificate) -> Self {
        Self::new(a, n, Status::No, rule, certificate)
    }

    /// The plain verdict, when the certificate is one a bare number can
    /// carry. Theorem-level refutations return `None`.
    pub fn two_squares_verdict(&self) -> Option<TwoSquaresVerdict> {
        match &self.certificate {
            Certificate::Witness { x, y } => Some(TwoSquaresVerdict::Yes { x: x.clone(), y: y.clone() }),
            Certificate::BadPrime { p, r } => Some(TwoSquaresVerdict::bad_prime(p.clone(), *r)),
            Certificate::Cofactor3Mod4 { cofactor } => Some(TwoSquaresVerdict::No {
                certificate: NoCertificate::Cofactor3Mod4 { cofactor: cofactor.clone() },
            }),
            Certificate::Blocking { cofactor } => {
                Some(TwoSquaresVerdict::Unknown { blocking_cofactor: cofactor.clone() })
            }
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<(&BigUint, &BigUint)> {
        match &self.certificate {
            Certificate::Witness { x, y } => Some((x, y)),
            _ => None,
        }
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// Re-checks the certificate from scratch: witnesses and bad primes
    /// against `a^n + 1`, theorem certificates against their hypotheses
    /// (factoring only `a`, `a + 1` and exponents).
    pub fn check(&self) -> Result<()> {
        let (a, n) = (&self.a, self.n);
        let expected = match &self.certificate {
            Certificate::Witness { .. } => Status::Yes,
            Certificate::Blocking { .. } => Status::Unknown,
            _ => Status::No,
        };
        ensure(self.status == expected, || format!("status {:?} does not fit certificate", self.status))?;
        let budget = EffortBudget::default();
        match &self.certificate {
            Certificate::Witness { x, y } => {
                ensure(x >= y && x * x + y * y == power_plus_one(a, n)?, || {
                    format!("({x}, {y}) is not a representation of {a}^{n} + 1")
                })
            }
            Certificate::BadPrime { p, r } => {
                let nc = NoCertificate::BadPrime { p: p.clone(), r: *r };
                ensure(nc.verify(&power_plus_one(a, n)?), || format!("{p}^{r} is not a bad prime power"))
            }
            Certificate::Cofactor3Mod4 { cofactor } => {
                let nc = NoCertificate::Cofactor3Mod4 { cofactor: cofactor.clone() };
                ensure(nc.verify(&power_plus_one(a, n)?), || format!("{cofactor} is not a 3 mod 4 block"))
            }
            Certificate::Blocking { cofactor } => {
                let v = power_plus_one(a, n)?;
                ensure(!cofactor.is_zero() && (&v % cofactor).is_zero(), || {
                    format!("{cofactor} does not divide {a}^{n} + 1")
                })
            }
            Certificate::OddPartThreeMod4 { two_adic } => {
                let t = u32::try_from(*two_adic).map_err(|_| fail("two-adic valuation too large"))?;
                let modulus = BigUint::one() << (t + 2);
                let r = (a.modpow(&BigUint::from(n), &modulus) + 1u32) % &modulus;
                ensure(r == BigUint::from(3u32) << t, || format!("{a}^{n} + 1 is not 3 * 2^{t} mod 2^{}", t + 2))
            }
            Certificate::BadPrimesOfAPlusOne { primes } => {
                ensure(a.is_even() && !primes.is_empty(), || "needs even a and a bad prime".into())?;
                let a1 = a + 1u32;
                for (i, p) in primes.iter().enumerate() {
                    ensure(is_prime_3_mod_4(p) && exact_valuation(p, &a1)? % 2 == 1, || {
                        format!("{p} is not a bad prime of {a1}")
                    })?;
                    ensure(primes[..i].iter().all(|q| q != p), || "repeated prime".into())?;
                }
                ensure(primes.len() >= 2 || primes[0] != BigUint::from(n), || {
                    format!("n = {n} is the exceptional exponent")
                })
            }
            Certificate::FourX { x } => {
                ensure(a == &(x * 4u32) && residue(x, 4) == 3, || format!("{a} is not 4x with x = 3 mod 4"))?;
                ensure((BigUint::from(n) % x).is_zero(), || format!("{x} does not divide {n}"))?;
                let f = crate::arith::factorize(x, &budget)?;
                ensure(f.is_complete() && f.factors.iter().all(|(_, e)| *e == 1), || {
                    format!("{x} is not squarefree")
                })
            }
            Certificate::MDoesNotDivide { m } => {
                let mi = compute_m(a, &budget)?;
                ensure(&mi.m == m && !(BigUint::from(n) % m).is_zero(), || format!("m = {m} divides {n}"))
            }
            Certificate::QuotientNotSots { m, p, r } => {
                let mi = compute_m(a, &budget)?;
                let nb = BigUint::from(n);
                ensure(&mi.m == m && (&nb % m).is_zero(), || format!("m = {m} is wrong or does not divide {n}"))?;
                let q = (nb / m).to_u64().expect("divides a u64");
                let pb = BigUint::from(*p);
                ensure(is_prime_3_mod_4(&pb) && r % 2 == 1, || format!("{p}^{r} is not a bad prime power"))?;
                ensure(exact_valuation(&pb, &BigUint::from(q))? == *r, || format!("{p}^{r} does not exactly divide {q}"))
            }
            Certificate::SquareClause { p, reduced } => {
                let pb = BigUint::from(*p);
                ensure(residue(a, 4) == 3 && is_prime_3_mod_4(&pb), || "square clause needs a, p = 3 mod 4".into())?;
                ensure(p.checked_mul(*p).and_then(|s| s.checked_mul(*reduced)) == Some(n), || {
                    format!("{n} != {reduced} * {p}^2")
                })?;
                ensure(!(a.modpow(&BigUint::from(*reduced), &pb) + 1u32).is_multiple_of(&pb), || {
                    format!("{p} divides {a}^{reduced} + 1")
                })
            }
            Certificate::Divisor { delta, inner } => {
                ensure(*delta < n && n % delta == 0 && inner.n == *delta && &inner.a == a, || {
                    format!("{delta} is not a proper divisor of {n} for this base")
                })?;
                ensure(inner.status == Status::No, || "inner record is not a refutation".into())?;
                inner.check()?;
                match self.rule {
                    Rule::OneModEight => ensure(residue(a, 8) == 1, || format!("{a} is not 1 mod 8")),
                    Rule::EvenBase => {
                        let f = crate::arith::factorize(&(a + 1u32), &budget)?;
                        let sots = verdict_from_factorization(&f)?.status() == Status::Yes;
                        ensure(a.is_even() && sots, || format!("{a} is not even with a + 1 a sum of two squares"))
                    }
                    Rule::ThreeModFour => {
                        let mi = compute_m(a, &budget)?;
                        let d = BigUint::from(*delta);
                        ensure((&d % &mi.m).is_zero(), || format!("m = {} does not divide {delta}", mi.m))?;
                        let rest = (d / &mi.m).to_u64().expect("divides a u64");
                        ensure(crate::two_squares::brute_force_u64(rest).is_some(), || {
                            format!("{rest} is not a sum of two squares")
                        })
                    }
                    other => Err(fail(format!("rule {other} does not propagate refutations"))),
                }
            }
            Certificate::Transfer { p, v, reduced, inner } => {
                ensure(residue(p, 4) == 1 && is_probable_prime(p) && !(v % p).is_zero(), || {
                    format!("{p} is not a prime 1 mod 4 prime to {v}")
                })?;
                ensure(a == &(p * v * v), || format!("{a} != {p} * {v}^2"))?;
                ensure(BigUint::from(*reduced) * p == BigUint::from(n), || format!("{n} != {reduced} * {p}"))?;
                ensure(inner.n == *reduced && &inner.a == a && inner.status == Status::No, || {
                    "inner record does not match".into()
                })?;
                inner.check()
            }
        }
    }
}

/// Rejects `n = 0` and `a = 0`.
fn validate(a: &BigUint, n: u64) -> Result<()> {
    if a.is_zero() {
        return Err(Error::Zero("a"));
    }
    if n == 0 {
        return Err(Error::Zero("n"));
    }
    Ok(())
}

/// Even exponents and square bases.
fn fast_path(a: &BigUint, n: u64) -> Result<Option<ClassificationRecord>> {
    if n.is_multiple_of(2) {
        let half = power_plus_one(a, n / 2)? - 1u32;
        return Ok(Some(ClassificationRecord::yes(a, n, Rule::EvenExponent, half, BigUint::one())));
    }
    if let Some(r) = perfect_square_root(a) {
        let x = power_plus_one(&r, n)? - 1u32;
        return Ok(Some(ClassificationRecord::yes(a, n, Rule::PerfectSquare, x, BigUint::one())));
    }
    Ok(None)
}

/// Shared state for a run of decisions: the budget, the execution mode,
/// and the verdict and factorization caches.
#[derive(Debug)]
pub struct Classifier {
    budget: EffortBudget,
    mode: ExecMode,
    verdicts: RwLock<HashMap<(BigUint, u64), ClassificationRecord>>,
    factors: RwLock<HashMap<BigUint, Factorization>>,
    factor_calls: AtomicU64,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::new(EffortBudget::default())
    }
}

impl Classifier {
    pub fn new(budget: EffortBudget) -> Self {
        Classifier::with_mode(budget, ExecMode::default())
    }

    pub fn with_mode(budget: EffortBudget, mode: ExecMode) -> Self {
        Classifier {
            budget,
            mode,
            verdicts: RwLock::new(HashMap::new()),
            factors: RwLock::new(HashMap::new()),
            factor_calls: AtomicU64::new(0),
        }
    }

    pub fn budget(&self) -> &EffortBudget {
        &self.budget
    }

    pub fn mode(&self) -> ExecMode {
        self.mode
    }

    /// Number of factorizations actually run (cache hits excluded).
    pub fn factor_calls(&self) -> u64 {
        self.factor_calls.load(Ordering::Relaxed)
    }

    pub fn cached(&self, a: &BigUint, n: u64) -> Option<ClassificationRecord> {
        self.verdicts.read().unwrap().get(&(a.clone(), n)).cloned()
    }

    /// Seeds the verdict cache; the record is checked first.
    pub fn insert_record(&self, record: ClassificationRecord) -> Result<()> {
        record.check()?;
        self.store(record);
        Ok(())
    }

    fn store(&self, record: ClassificationRecord) {
        self.verdicts.write().unwrap().insert((record.a.clone(), record.n), record);
    }

    /// Every cached record, ordered by `(a, n)`.
    pub fn records(&self) -> Vec<ClassificationRecord> {
        let mut out: Vec<_> = self.verdicts.read().unwrap().values().cloned().collect();
        out.sort_by(|x, y| (&x.a, x.n).cmp(&(&y.a, y.n)));
        out
    }

    /// Seeds the factorization cache; only complete factorizations are kept.
    pub fn insert_factorization(&self, f: Factorization) -> Result<()> {
        f.check()?;
        if f.is_complete() {
            self.factors.write().unwrap().insert(f.value.clone(), f);
        }
        Ok(())
    }

    /// Every cached factorization, ordered by value.
    pub fn factorizations(&self) -> Vec<Factorization> {
        let mut out: Vec<_> = self.factors.read().unwrap().values().cloned().collect();
        out.sort_by(|x, y| x.value.cmp(&y.value));
        out
    }

    /// Factors `n` through the cache.
    pub fn factor(&self, n: &BigUint) -> Result<Factorization> {
        if let Some(f) = self.factors.read().unwrap().get(n) {
            return Ok(f.clone());
        }
        self.factor_calls.fetch_add(1, Ordering::Relaxed);
        let (f, _) = factorize_with(n, &self.budget, |_| ControlFlow::Continue(()))?;
        if f.is_complete() {
            self.factors.write().unwrap().insert(n.clone(), f.clone());
        }
        Ok(f)
    }

    /// Factors a piece of `total`, stopping at the first prime `3 mod 4`
    /// that divides `total` to an odd power.
    fn factor_piece(&self, piece: &BigUint, total: &BigUint) -> Result<(Factorization, Option<(BigUint, u64)>)> {
        let odd_in_total = |p: &BigUint| -> Option<u64> {
            if residue(p, 4) != 3 {
                return None;
            }
            exact_valuation(p, total).ok().filter(|r| r % 2 == 1)
        };
        if let Some(f) = self.factors.read().unwrap().get(piece) {
            let bad = f.factors.iter().find_map(|(p, _)| odd_in_total(p).map(|r| (p.clone(), r)));
            return Ok((f.clone(), bad));
        }
        self.factor_calls.fetch_add(1, Ordering::Relaxed);
        let mut found = None;
        let (f, stopped) = factorize_with(piece, &self.budget, |p| match odd_in_total(p) {
            Some(r) => {
                found = Some(r);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        })?;
        if let (Some(p), Some(r)) = (stopped, found) {
            return Ok((f, Some((p, r))));
        }
        if f.is_complete() {
            self.factors.write().unwrap().insert(piece.clone(), f.clone());
        }
        Ok((f, None))
    }

    /// Decides whether `a^n + 1` is a sum of two squares.
    pub fn decide(&self, a: &BigUint, n: u64) -> Result<ClassificationRecord> {
        validate(a, n)?;
        if let Some(r) = fast_path(a, n)? {
            return Ok(r);
        }
        if let Some(r) = self.cached(a, n) {
            return Ok(r);
        }
        let record = self.decide_uncached(a, n)?;
        self.store(record.clone());
        Ok(record)
    }

    fn decide_uncached(&self, a: &BigUint, n: u64) -> Result<ClassificationRecord> {
        if let Some(r) = self.screen(a, n)? {
            return Ok(r);
        }
        let proper: Vec<u64> = divisors_u64(n).into_iter().filter(|&d| d < n).collect();
        if !proper.is_empty() {
            for &d in &proper {
                self.decide(a, d)?;
            }
            if let Some(r) = self.screen(a, n)? {
                return Ok(r);
            }
        }
        if let Some(r) = self.transfer(a, n)? {
            return Ok(r);
        }
        self.by_factorization(a, n)
    }

    /// Factoring only: no screens, no transfer, no verdict cache.
    pub fn decide_by_factorization(&self, a: &BigUint, n: u64) -> Result<ClassificationRecord> {
        validate(a, n)?;
        if n.is_multiple_of(2) || a.is_one() {
            return fast_path(a, n).map(|r| r.expect("even n and a = 1 are fast paths"));
        }
        self.by_factorization(a, n)
    }

    /// `a = p v^2` with `p | n`: the status equals that of `a^{n/p} + 1`,
    /// and in the positive case the new factors come with explicit
    /// representations.
    fn transfer(&self, a: &BigUint, n: u64) -> Result<Option<ClassificationRecord>> {
        let Some((p, v)) = px2_form(self, a)? else {
            return Ok(None);
        };
        let Some(pu) = p.to_u64().filter(|&p| p <= i64::MAX as u64) else {
            return Ok(None);
        };
        if !n.is_multiple_of(pu) {
            return Ok(None);
        }
        let reduced = n / pu;
        let inner = self.decide(a, reduced)?;
        Ok(Some(match inner.status {
            Status::Yes => {
                let (x, y) = inner.witness().expect("yes records carry a witness");
                let (mut x, mut y) = (x.clone(), y.clone());
                for delta in divisors_u64(n).into_iter().filter(|d| !reduced.is_multiple_of(*d)) {
                    let (s, t) = sots_of_phi(-(pu as i64), &v, 2 * delta)?;
                    (x, y) = compose(&x, &y, &s, &t);
                }
                let record = ClassificationRecord::yes(a, n, Rule::Px2, x, y);
                record.check().map_err(|e| Error::Internal(format!("transfer witness: {e}")))?;
                record
            }
            Status::No => ClassificationRecord::no(
                a,
                n,
                Rule::Px2,
                Certificate::Transfer { p, v, reduced, inner: Box::new(inner) },
            ),
            Status::Unknown => {
                let cofactor = match &inner.certificate {
                    Certificate::Blocking { cofactor } => cofactor.clone(),
                    _ => return Err(Error::Internal("unknown record without blocking cofactor".into())),
                };
                ClassificationRecord::new(a, n, Status::Unknown, Rule::Px2, Certificate::Blocking { cofactor })
            }
        }))
    }

    /// Factors each `Phi_{2 delta}(a)` separately and combines.
    fn by_factorization(&self, a: &BigUint, n: u64) -> Result<ClassificationRecord> {
        let list = factor_a_n_plus_1(a, n)?;
        let total = list.product();
        let pieces = self.mode.map(&list.entries, |e| self.factor_piece(&e.value, &total));
        let pieces = pieces.into_iter().collect::<Result<Vec<_>>>()?;
        if let Some((p, r)) = pieces.iter().find_map(|(_, bad)| bad.clone()) {
            return Ok(ClassificationRecord::no(a, n, Rule::Factorization, Certificate::BadPrime { p, r }));
        }
        let mut factors = Vec::new();
        let mut parts = Vec::new();
        for (f, _) in pieces {
            factors.extend(f.factors);
            parts.extend(f.unfactored_parts);
        }
        let merged = Factorization::from_parts(total, factors, parts)?;
        let certificate = match verdict_from_factorization(&merged)? {
            TwoSquaresVerdict::Yes { x, y } => Certificate::Witness { x, y },
            TwoSquaresVerdict::No { certificate: NoCertificate::BadPrime { p, r } } => Certificate::BadPrime { p, r },
            TwoSquaresVerdict::No { certificate: NoCertificate::Cofactor3Mod4 { cofactor } } => {
                Certificate::Cofactor3Mod4 { cofactor }
            }
            TwoSquaresVerdict::Unknown { blocking_cofactor } => Certificate::Blocking { cofactor: blocking_cofactor },
        };
        let status = match certificate {
            Certificate::Witness { .. } => Status::Yes,
            Certificate::Blocking { .. } => Status::Unknown,
            _ => Status::No,
        };
        if merged.is_complete() {
            self.factors.write().unwrap().insert(merged.value.clone(), merged);
        }
        Ok(ClassificationRecord::new(a, n, status, Rule::Factorization, certificate))
    }
}

/// One-shot [`Classifier::decide`] with a fresh cache.
pub fn decide(a: &BigUint, n: u64, budget: &EffortBudget) -> Result<ClassificationRecord> {
    Classifier::new(*budget).decide(a, n)
}
