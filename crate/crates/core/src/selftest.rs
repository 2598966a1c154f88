//! Invariant suites run on demand, reported as pass/fail counts.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors_u64, exact_valuation, perfect_square_root, primes_up_to};
use crate::aurifeuillian::{admissible_pairs, aurifeuillian_pair};
use crate::classifier::{poly_family, witness_nonsots, Classifier};
use crate::cyclotomic::{cyclotomic_poly, predict_valuation};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::two_squares::{brute_force_u64, classify, density_ratio, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCase {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub cases: Vec<SelftestCase>,
    pub passed: usize,
    pub failed: usize,
}

fn fail(msg: String) -> Error {
    Error::Internal(msg)
}

fn representations(c: &Classifier) -> Result<String> {
    let limit = 20_000u64;
    for n in 1..=limit {
        let nb = BigUint::from(n);
        let v = classify(&nb, c.budget())?;
        if (v.status() == Status::Yes) != brute_force_u64(n).is_some() || !v.verify(&nb) {
            return Err(fail(format!("N = {n}")));
        }
    }
    Ok(format!("N <= {limit}"))
}

fn cyclotomic_products(_: &Classifier) -> Result<String> {
    for n in 1..=60u64 {
        let product = divisors_u64(n)
            .into_iter()
            .map(cyclotomic_poly)
            .try_fold(Polynomial::one(), |acc, d| d.map(|d| &acc * &*d))?;
        if product != Polynomial::x_pow_minus_one(n as usize) {
            return Err(fail(format!("prod Phi_d != x^{n} - 1")));
        }
    }
    Ok("n <= 60".into())
}

fn valuation_lifting(_: &Classifier) -> Result<String> {
    let mut count = 0;
    for p in primes_up_to(30).into_iter().filter(|&p| p > 2) {
        let pb = BigUint::from(p);
        for a in 2..=30u64 {
            for m in [1u64, 3, 5] {
                let ab = BigUint::from(a);
                if exact_valuation(&pb, &(ab.pow(m as u32) + 1u32))? == 0 {
                    continue;
                }
                for t in [1, 3, p] {
                    let n = m * t;
                    let direct = exact_valuation(&pb, &(ab.pow(n as u32) + 1u32))?;
                    if predict_valuation(&pb, &ab, m, n)? != direct {
                        return Err(fail(format!("(p, a, m, n) = ({p}, {a}, {m}, {n})")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn aurifeuillian_identities(_: &Classifier) -> Result<String> {
    let pairs = admissible_pairs(10, 50);
    for &(k, n) in &pairs {
        aurifeuillian_pair(k, n)?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn records(c: &Classifier) -> Result<String> {
    for a in 1..=30u64 {
        let ab = BigUint::from(a);
        for n in (1..=11).step_by(2) {
            let r = c.decide(&ab, n)?;
            r.check()?;
            let direct = classify(&(ab.pow(n as u32) + 1u32), c.budget())?.status();
            if r.status != Status::Unknown && direct != Status::Unknown && r.status != direct {
                return Err(fail(format!("({a}, {n}) disagrees with factoring")));
            }
        }
    }
    Ok("a <= 30, odd n <= 11".into())
}

fn witnesses(c: &Classifier) -> Result<String> {
    let mut count = 0;
    for a in 2..100u64 {
        let ab = BigUint::from(a);
        if perfect_square_root(&ab).is_some() {
            continue;
        }
        witness_nonsots(c, &ab)?.record.check()?;
        count += 1;
    }
    Ok(format!("{count} bases"))
}

fn families(_: &Classifier) -> Result<String> {
    let primes: Vec<u64> = primes_up_to(61).into_iter().filter(|p| p % 4 == 1).collect();
    for &p in &primes {
        let fam = poly_family(p)?;
        let f1 = fam.f.eval(&BigInt::from(1));
        let (g1, h1) = (fam.g.eval(&BigInt::from(1)), fam.h.eval(&BigInt::from(1)));
        if f1.pow(p as u32) + 1 != &g1 * &g1 + &h1 * &h1 {
            return Err(fail(format!("family for p = {p} at X = 1")));
        }
    }
    Ok(format!("{} primes", primes.len()))
}

fn density(_: &Classifier) -> Result<String> {
    let r: Vec<f64> = [1_000u64, 10_000, 100_000]
        .into_iter()
        .map(|x| density_ratio(x).map(|s| s.ratio))
        .collect::<Result<_>>()?;
    if !(r[0] > r[1] && r[1] > r[2]) {
        return Err(fail(format!("ratios {r:?} not decreasing")));
    }
    Ok(format!("{:.4} > {:.4} > {:.4}", r[0], r[1], r[2]))
}

type Suite = fn(&Classifier) -> Result<String>;

const SUITES: [(&str, Suite); 8] = [
    ("representations", representations),
    ("cyclotomic-products", cyclotomic_products),
    ("valuation-lifting", valuation_lifting),
    ("aurifeuillian-identities", aurifeuillian_identities),
    ("records", records),
    ("witnesses", witnesses),
    ("polynomial-families", families),
    ("density", density),
];

pub fn selftest(classifier: &Classifier) -> SelftestReport {
    let cases: Vec<SelftestCase> = SUITES
        .iter()
        .map(|(name, suite)| {
            let out = suite(classifier);
            SelftestCase {
                name: name.to_string(),
                passed: out.is_ok(),
                detail: out.unwrap_or_else(|e| e.to_string()),
            }
        })
        .collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    SelftestReport { failed: cases.len() - passed, passed, cases }
}
