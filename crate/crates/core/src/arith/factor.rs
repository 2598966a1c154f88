//! Bounded-effort factorization: trial division followed by Pollard rho
//! (Brent's cycle finding with batched gcds).
//!
//! Rho runs on one- or two-word Montgomery arithmetic whenever the cofactor
//! fits below 2^127 and on `BigUint` otherwise. Polynomial offsets come from
//! a SplitMix64 stream keyed by the budget seed, so a given budget always
//! produces the same factorization.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::mont::{gcd_u128, Mont128, Mont64};
use super::prime::{default_small_primes, is_probable_prime_seeded, primes_up_to, DEFAULT_SEED};
use super::roots::perfect_power;
use crate::error::{Error, Result};
use crate::serde_dec;

/// How much work a factorization may spend before giving up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffortBudget {
    pub trial_division_bound: u64,
    /// Rho iterations allowed per composite cofactor, summed over restarts.
    pub rho_iteration_cap: u64,
    /// Wall-clock cap per factorization call; 0 disables the cap.
    pub total_time_cap_ms: u64,
    pub seed: u64,
}

impl Default for EffortBudget {
    fn default() -> Self {
        EffortBudget {
            trial_division_bound: 100_000,
            rho_iteration_cap: 100_000_000,
            total_time_cap_ms: 0,
            seed: DEFAULT_SEED,
        }
    }
}

impl EffortBudget {
    pub fn validate(&self) -> Result<()> {
        if self.trial_division_bound < 2 {
            return Err(Error::OutOfRange {
                what: "trial_division_bound",
                value: self.trial_division_bound.to_string(),
                expected: ">= 2",
            });
        }
        Ok(())
    }

    fn deadline(&self, start: Instant) -> Option<Instant> {
        (self.total_time_cap_ms > 0)
            .then(|| start + Duration::from_millis(self.total_time_cap_ms))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CofactorStatus {
    One,
    /// Not produced by [`factorize`], which moves every prime into the
    /// factor list; allowed for factorizations assembled elsewhere.
    ProbablePrime,
    CompositeUnfactored,
}

/// `value = prod(prime^exponent) * cofactor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "serde_dec")]
    pub value: BigUint,
    #[serde(with = "serde_dec::factor_list")]
    pub factors: Vec<(BigUint, u32)>,
    #[serde(with = "serde_dec")]
    pub cofactor: BigUint,
    pub cofactor_status: CofactorStatus,
    /// The composite pieces whose product is `cofactor`, as rho left them.
    #[serde(with = "serde_dec::list", default)]
    pub unfactored_parts: Vec<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor_status == CofactorStatus::One
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Builds a factorization from its parts, normalizing order and
    /// checking every structural invariant.
    pub fn from_parts(
        value: BigUint,
        factors: impl IntoIterator<Item = (BigUint, u32)>,
        unfactored_parts: Vec<BigUint>,
    ) -> Result<Self> {
        let mut merged: Vec<(BigUint, u32)> = Vec::new();
        let mut sorted: Vec<(BigUint, u32)> = factors.into_iter().filter(|(_, e)| *e > 0).collect();
        sorted.sort();
        for (p, e) in sorted {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        let cofactor = unfactored_parts.iter().fold(BigUint::one(), |acc, c| acc * c);
        let cofactor_status = if cofactor.is_one() {
            CofactorStatus::One
        } else if unfactored_parts.len() == 1 && is_probable_prime_seeded(&cofactor, DEFAULT_SEED) {
            CofactorStatus::ProbablePrime
        } else {
            CofactorStatus::CompositeUnfactored
        };
        let f = Factorization {
            value,
            factors: merged,
            cofactor,
            cofactor_status,
            unfactored_parts: unfactored_parts.into_iter().filter(|c| !c.is_one()).collect(),
        };
        f.check()?;
        Ok(f)
    }

    /// Verifies the product identity and the ordering/primality invariants.
    pub fn check(&self) -> Result<()> {
        let mut product = self.cofactor.clone();
        let mut last: Option<&BigUint> = None;
        for (p, e) in &self.factors {
            if *e == 0 || last.is_some_and(|q| q >= p) || !is_probable_prime_seeded(p, DEFAULT_SEED) {
                return Err(Error::Internal(format!("bad factor entry {p}^{e}")));
            }
            last = Some(p);
            product *= p.pow(*e);
        }
        if product != self.value {
            return Err(Error::Internal(format!(
                "factor product {product} differs from {}",
                self.value
            )));
        }
        if self.cofactor.is_one() != (self.cofactor_status == CofactorStatus::One) {
            return Err(Error::Internal("cofactor status inconsistent".into()));
        }
        Ok(())
    }
}

/// Factors `n` within `budget`. `n = 0` is rejected; `n = 1` is the empty
/// product.
pub fn factorize(n: &BigUint, budget: &EffortBudget) -> Result<Factorization> {
    factorize_with(n, budget, |_| ControlFlow::Continue(())).map(|(f, _)| f)
}

/// Like [`factorize`], but calls `on_prime` with every prime as soon as it is
/// found. Returning `Break` stops the search early; the second tuple element
/// then carries that prime, and the returned factorization is partial (its
/// cofactor holds everything not yet split).
pub fn factorize_with(
    n: &BigUint,
    budget: &EffortBudget,
    mut on_prime: impl FnMut(&BigUint) -> ControlFlow<()>,
) -> Result<(Factorization, Option<BigUint>)> {
    if n.is_zero() {
        return Err(Error::Zero("factorize input"));
    }
    budget.validate()?;
    let start = Instant::now();
    let deadline = budget.deadline(start);

    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();

    let owned;
    let primes: &[u64] = if budget.trial_division_bound == 100_000 {
        default_small_primes()
    } else {
        owned = primes_up_to(budget.trial_division_bound);
        &owned
    };

    for &p in primes {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            found.push((pb.clone(), e));
            if on_prime(&pb).is_break() {
                return finish(n, found, vec![rest], Some(pb));
            }
        }
    }

    let mut pending = vec![rest];
    let mut unfactored = Vec::new();
    let mut rho_stream = SplitMix64::new(budget.seed);

    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime_seeded(&c, budget.seed) {
            let e = divide_out(&mut pending, &mut unfactored, &c) + 1;
            found.push((c.clone(), e));
            if on_prime(&c).is_break() {
                pending.extend(unfactored);
                return finish(n, found, pending, Some(c));
            }
            continue;
        }
        if let Some((base, k)) = perfect_power(&c) {
            for _ in 0..k {
                pending.push(base.clone());
            }
            continue;
        }
        match pollard_rho(&c, budget.rho_iteration_cap, deadline, &mut rho_stream) {
            Some(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            None => unfactored.push(c),
        }
    }
    finish(n, found, unfactored, None)
}

/// Removes every copy of prime `p` from the work lists, returning how many.
fn divide_out(pending: &mut [BigUint], unfactored: &mut [BigUint], p: &BigUint) -> u32 {
    let mut e = 0;
    for c in pending.iter_mut().chain(unfactored.iter_mut()) {
        loop {
            let (q, r) = c.div_rem(p);
            if !r.is_zero() {
                break;
            }
            *c = q;
            e += 1;
        }
    }
    e
}

fn finish(
    n: &BigUint,
    found: Vec<(BigUint, u32)>,
    unfactored: Vec<BigUint>,
    stopped: Option<BigUint>,
) -> Result<(Factorization, Option<BigUint>)> {
    let unfactored: Vec<BigUint> = unfactored.into_iter().filter(|c| !c.is_one()).collect();
    let f = Factorization::from_parts(n.clone(), found, unfactored)?;
    Ok((f, stopped))
}

/// Small deterministic generator for rho offsets.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

/// Arithmetic needed by Brent's rho loop, over some representation of Z/nZ.
trait RhoRing {
    type Elem: Clone + PartialEq;
    fn elem(&self, v: u64) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// x^2 + c
    fn step(&self, x: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    /// acc * |x - y|
    fn mul_diff(&self, acc: &Self::Elem, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn gcd_n(&self, e: &Self::Elem) -> BigUint;
    fn diff_gcd_n(&self, x: &Self::Elem, y: &Self::Elem) -> BigUint;
}

impl RhoRing for Mont64 {
    type Elem = u64;
    fn elem(&self, v: u64) -> u64 {
        self.to_mont(v)
    }
    fn one(&self) -> u64 {
        self.to_mont(1)
    }
    fn step(&self, x: &u64, c: &u64) -> u64 {
        self.add(self.mul(*x, *x), *c)
    }
    fn mul_diff(&self, acc: &u64, x: &u64, y: &u64) -> u64 {
        self.mul(*acc, x.abs_diff(*y))
    }
    fn gcd_n(&self, e: &u64) -> BigUint {
        BigUint::from(gcd_u128(*e as u128, self.modulus() as u128))
    }
    fn diff_gcd_n(&self, x: &u64, y: &u64) -> BigUint {
        BigUint::from(gcd_u128(x.abs_diff(*y) as u128, self.modulus() as u128))
    }
}

impl RhoRing for Mont128 {
    type Elem = u128;
    fn elem(&self, v: u64) -> u128 {
        self.to_mont(v as u128)
    }
    fn one(&self) -> u128 {
        self.to_mont(1)
    }
    fn step(&self, x: &u128, c: &u128) -> u128 {
        self.add(self.mul(*x, *x), *c)
    }
    fn mul_diff(&self, acc: &u128, x: &u128, y: &u128) -> u128 {
        self.mul(*acc, x.abs_diff(*y))
    }
    fn gcd_n(&self, e: &u128) -> BigUint {
        BigUint::from(gcd_u128(*e, self.modulus()))
    }
    fn diff_gcd_n(&self, x: &u128, y: &u128) -> BigUint {
        BigUint::from(gcd_u128(x.abs_diff(*y), self.modulus()))
    }
}

struct BigRing(BigUint);

impl RhoRing for BigRing {
    type Elem = BigUint;
    fn elem(&self, v: u64) -> BigUint {
        BigUint::from(v) % &self.0
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn step(&self, x: &BigUint, c: &BigUint) -> BigUint {
        (x * x + c) % &self.0
    }
    fn mul_diff(&self, acc: &BigUint, x: &BigUint, y: &BigUint) -> BigUint {
        let d = if x >= y { x - y } else { y - x };
        (acc * d) % &self.0
    }
    fn gcd_n(&self, e: &BigUint) -> BigUint {
        e.gcd(&self.0)
    }
    fn diff_gcd_n(&self, x: &BigUint, y: &BigUint) -> BigUint {
        let d = if x >= y { x - y } else { y - x };
        d.gcd(&self.0)
    }
}

const BATCH: u64 = 128;

/// Finds a nontrivial factor of the odd composite `n`, or gives up after
/// `cap` iterations (summed over restarts) or at `deadline`.
fn pollard_rho(
    n: &BigUint,
    cap: u64,
    deadline: Option<Instant>,
    stream: &mut SplitMix64,
) -> Option<BigUint> {
    if !n.bit(0) {
        return Some(BigUint::from(2u32));
    }
    match n.to_u128() {
        Some(v) if v < 1 << 63 => rho_driver(&Mont64::new(v as u64), n, cap, deadline, stream),
        Some(v) if v < 1 << 127 => rho_driver(&Mont128::new(v), n, cap, deadline, stream),
        _ => rho_driver(&BigRing(n.clone()), n, cap, deadline, stream),
    }
}

fn rho_driver<R: RhoRing>(
    ring: &R,
    n: &BigUint,
    cap: u64,
    deadline: Option<Instant>,
    stream: &mut SplitMix64,
) -> Option<BigUint> {
    let mut spent = 0u64;
    while spent < cap {
        let c = ring.elem(stream.next() % 0xffff_fff0 + 1);
        let x0 = ring.elem(stream.next() % 0xffff_fff0 + 2);
        match brent(ring, n, &c, x0, cap - spent, deadline, &mut spent) {
            RhoResult::Factor(d) => return Some(d),
            RhoResult::Cycle => continue,
            RhoResult::Exhausted => return None,
        }
    }
    None
}

enum RhoResult {
    Factor(BigUint),
    /// The sequence closed up modulo n; retry with another offset.
    Cycle,
    Exhausted,
}

fn brent<R: RhoRing>(
    ring: &R,
    n: &BigUint,
    c: &R::Elem,
    x0: R::Elem,
    allowance: u64,
    deadline: Option<Instant>,
    spent: &mut u64,
) -> RhoResult {
    let one = BigUint::one();
    let mut y = x0;
    let mut r = 1u64;
    let mut q = ring.one();
    let mut used = 0u64;
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = ring.step(&y, c);
        }
        used += r;
        let mut k = 0;
        while k < r {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = ring.step(&y, c);
                q = ring.mul_diff(&q, &x, &y);
            }
            used += steps;
            k += steps;
            let g = ring.gcd_n(&q);
            if g != one {
                *spent += used;
                if &g != n {
                    return RhoResult::Factor(g);
                }
                // Overshot inside the batch: replay it one step at a time.
                for _ in 0..steps {
                    ys = ring.step(&ys, c);
                    let g = ring.diff_gcd_n(&x, &ys);
                    if g != one {
                        return if &g == n {
                            RhoResult::Cycle
                        } else {
                            RhoResult::Factor(g)
                        };
                    }
                }
                return RhoResult::Cycle;
            }
            if used >= allowance {
                *spent += used;
                return RhoResult::Exhausted;
            }
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            *spent += used;
            return RhoResult::Exhausted;
        }
        r *= 2;
    }
}
