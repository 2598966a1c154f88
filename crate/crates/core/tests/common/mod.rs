//! Checks shared by the theorem suites and the acceptance target. Each
//! returns a short summary on success and a description of the first
//! failure otherwise.
#![allow(dead_code)]

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumsq_core::arith::{exact_valuation, EffortBudget};
use sumsq_core::aurifeuillian::{admissible_pairs, aurifeuillian_pair, aurifeuillian_split, sots_of_phi};
use sumsq_core::classifier::{
    chart, compute_m, poly_family, px2_transfer, screen, witness_nonsots, ChartRow, Classifier, Rule,
};
use sumsq_core::cyclotomic::{
    cyclotomic_poly, eval_cyclotomic, linear_coefficient, predict_valuation, prime_in_cyclotomic,
    PrimeDivisorKind,
};
use sumsq_core::two_squares::{brute_force_u64, classify, density_ratio, Status};

pub type Check = Result<String, String>;

pub fn bu(v: u64) -> BigUint {
    BigUint::from(v)
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn pow1(a: u64, n: u64) -> BigUint {
    bu(a).pow(n as u32) + 1u32
}

fn odd_upto(n_max: u64) -> impl Iterator<Item = u64> {
    (1..=n_max).step_by(2)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Phi_n(x)` for integer `x >= 2` from `prod (x^d - 1)^{mu(n/d)}`.
pub fn phi_oracle(n: u64, x: &BigInt) -> BigInt {
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for d in divisors(n) {
        let term = x.pow(d as u32) - 1;
        match mobius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero());
    q
}

/// Full-factorization oracle for the status of `a^n + 1`.
pub fn oracle_status(a: u64, n: u64) -> Status {
    let v = pow1(a, n);
    if let Some(small) = v.to_u64().filter(|&s| s <= 100_000_000_000_000) {
        return if brute_force_u64(small).is_some() { Status::Yes } else { Status::No };
    }
    classify(&v, &EffortBudget::default()).expect("classify").status()
}

fn sots_u64(n: u64) -> bool {
    brute_force_u64(n).is_some()
}

fn timed(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:?}, limit {limit:?}");
    Ok(())
}

// ---------------------------------------------------------------- fixtures

pub fn worked_examples() -> Check {
    let start = Instant::now();
    let c = Classifier::default();
    let r = c.decide(&bu(6), 7).map_err(|e| e.to_string())?;
    let (x, y) = r.witness().ok_or("6^7 + 1 has no witness")?;
    ensure!(x * x + y * y == bu(279_937), "witness ({x}, {y}) does not sum to 279937");
    ensure!((x, y) == (&bu(476), &bu(231)), "expected (476, 231), got ({x}, {y})");
    let r = c.decide(&bu(12), 3).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::No && r.verify(), "12^3 + 1: {r:?}");
    for n in odd_upto(15) {
        let r = c.decide(&bu(20), n).map_err(|e| e.to_string())?;
        ensure!(r.status == Status::No && r.verify(), "20^{n} + 1: {r:?}");
    }
    let fresh = Classifier::default();
    for n in odd_upto(15) {
        let r = fresh.decide(&bu(13), n).map_err(|e| e.to_string())?;
        ensure!(r.status == Status::No && r.rule == Rule::FiveModEight, "13^{n} + 1: {r:?}");
    }
    ensure!(fresh.factor_calls() == 0, "13^n + 1 used {} factorizations", fresh.factor_calls());
    let w = witness_nonsots(&c, &bu(148)).map_err(|e| e.to_string())?;
    ensure!(w.n == 9 && w.record.verify(), "witness for 148 is n = {}", w.n);
    timed(Duration::from_secs(5), start, "worked examples")?;
    Ok(format!("{:.2?}", start.elapsed()))
}

// ------------------------------------------------------------------- chart

/// A row of the reference chart: `Some` list (with whether it
/// ends in an ellipsis), or `None` for "all".
pub struct Listed {
    pub a: u64,
    pub entries: Option<&'static [u64]>,
    pub open: bool,
}

const fn row(a: u64, entries: &'static [u64], open: bool) -> Listed {
    Listed { a, entries: Some(entries), open }
}

const fn all(a: u64) -> Listed {
    Listed { a, entries: None, open: false }
}

pub const REFERENCE_CHART: [Listed; 50] = [
    all(1),
    row(2, &[3], false),
    row(3, &[1, 5, 13, 65], true),
    all(4),
    row(5, &[], false),
    row(6, &[7], false),
    row(7, &[1, 13, 17, 29], true),
    row(8, &[1], false),
    all(9),
    row(10, &[], false),
    row(11, &[3, 159], true),
    row(12, &[1, 5, 11, 23], true),
    row(13, &[], false),
    row(14, &[3], false),
    row(15, &[1, 29, 89, 97], true),
    all(16),
    row(17, &[1, 7, 17, 23], true),
    row(18, &[19], false),
    row(19, &[1, 17, 29, 37], true),
    row(20, &[], false),
    row(21, &[], false),
    row(22, &[], false),
    row(23, &[3, 123], true),
    row(24, &[1, 7, 11, 19], true),
    all(25),
    row(26, &[], false),
    row(27, &[], false),
    row(28, &[1, 3, 11, 19], true),
    row(29, &[], false),
    row(30, &[31], false),
    row(31, &[1, 5, 25, 41], true),
    row(32, &[], false),
    row(33, &[1, 5, 7, 17], true),
    row(34, &[], false),
    row(35, &[1, 9, 13, 29], true),
    all(36),
    row(37, &[], false),
    row(38, &[], false),
    row(39, &[1, 13, 37, 61], true),
    row(40, &[1, 5, 13, 53], true),
    row(41, &[], false),
    row(42, &[], false),
    row(43, &[], false),
    row(44, &[1, 5, 7, 17], true),
    row(45, &[], false),
    row(46, &[], false),
    row(47, &[], false),
    row(48, &[1, 3, 5, 17], true),
    all(49),
    row(50, &[], false),
];

/// What the reference row says about `n`: `Some(yes?)`, or `None` past the
/// last listed entry of an open row.
pub fn reference_status(listed: &Listed, n: u64) -> Option<bool> {
    match listed.entries {
        None => Some(true),
        Some(e) if listed.open && e.last().is_some_and(|&last| n > last) => None,
        Some(e) => Some(e.contains(&n)),
    }
}

pub struct ChartComparison {
    pub cells: usize,
    pub unknown: usize,
    pub contradictions: Vec<String>,
}

pub fn compare_chart(rows: &[ChartRow], n_lo: u64, n_hi: u64) -> ChartComparison {
    let mut out = ChartComparison { cells: 0, unknown: 0, contradictions: Vec::new() };
    for (r, listed) in rows.iter().zip(REFERENCE_CHART.iter()) {
        assert_eq!(r.a, listed.a);
        for n in odd_upto(n_hi).filter(|&n| n >= n_lo) {
            out.cells += 1;
            if r.unknown.iter().any(|u| u.n == n) {
                out.unknown += 1;
                continue;
            }
            let ours = r.all || r.yes.contains(&n);
            if let Some(theirs) = reference_status(listed, n) {
                if ours != theirs {
                    out.contradictions.push(format!("a = {}, n = {n}: computed {ours}, listed {theirs}", r.a));
                }
            }
        }
    }
    out
}

pub fn chart_to_19() -> Check {
    let start = Instant::now();
    let c = Classifier::default();
    let rows = chart(&c, 50, 19).map_err(|e| e.to_string())?;
    let cmp = compare_chart(&rows, 1, 19);
    ensure!(cmp.unknown == 0, "{} unknown cells", cmp.unknown);
    ensure!(cmp.contradictions.is_empty(), "{}", cmp.contradictions.join("; "));
    let yes = |a: usize| rows[a - 1].yes.clone();
    ensure!(yes(3) == [1, 5, 13] && yes(7) == [1, 13, 17] && yes(12) == [1, 5, 11], "rows 3/7/12 differ");
    ensure!(yes(17) == [1, 7, 17] && yes(24) == [1, 7, 11, 19], "rows 17/24 differ");
    ensure!(yes(33) == [1, 5, 7, 17] && yes(48) == [1, 3, 5, 17], "rows 33/48 differ");
    for (r, listed) in rows.iter().zip(REFERENCE_CHART.iter()) {
        match listed.entries {
            None => ensure!(r.all && r.render_exponents() == "all", "row {} should be all", r.a),
            Some([]) => ensure!(r.render_exponents() == "-", "row {} should be empty", r.a),
            Some(_) => {}
        }
    }
    timed(Duration::from_secs(600), start, "chart to 19")?;
    Ok(format!("{} cells, {:.2?}", cmp.cells, start.elapsed()))
}

pub fn chart_20_to_29(budget_ms: u64) -> Check {
    let start = Instant::now();
    let budget = EffortBudget { total_time_cap_ms: budget_ms, ..EffortBudget::default() };
    let c = Classifier::new(budget);
    let rows = chart(&c, 50, 29).map_err(|e| e.to_string())?;
    let cmp = compare_chart(&rows, 21, 29);
    ensure!(cmp.contradictions.is_empty(), "{}", cmp.contradictions.join("; "));
    for r in &rows {
        for u in &r.unknown {
            ensure!(u.blocking_cofactor > BigUint::one(), "unknown ({}, {}) lacks a cofactor", r.a, u.n);
        }
    }
    let present = |a: usize, n: u64| rows[a - 1].yes.contains(&n) || rows[a - 1].unknown.iter().any(|u| u.n == n);
    ensure!(present(7, 29) && present(31, 25) && present(35, 29), "7/29, 31/25 or 35/29 missing");
    Ok(format!(
        "{} cells, {} unknown ({:.1}%), 0 contradictions, {:.2?}",
        cmp.cells,
        cmp.unknown,
        100.0 * cmp.unknown as f64 / cmp.cells as f64,
        start.elapsed()
    ))
}

// ------------------------------------------------------------------ oracle

pub fn oracle_equivalence(limit: u64) -> Check {
    let start = Instant::now();
    let b = EffortBudget::default();
    let mut yes = 0u64;
    for n in 1..=limit {
        let v = classify(&bu(n), &b).map_err(|e| e.to_string())?;
        let oracle = brute_force_u64(n);
        ensure!((v.status() == Status::Yes) == oracle.is_some(), "N = {n}: {v:?} vs {oracle:?}");
        ensure!(v.verify(&bu(n)), "N = {n}: certificate does not verify");
        if let (Some((x, y)), Some((ox, oy))) = (v.witness(), oracle) {
            ensure!(x == &bu(ox) && y == &bu(oy), "N = {n}: ({x}, {y}) vs ({ox}, {oy})");
            yes += 1;
        }
    }
    Ok(format!("N <= {limit}, {yes} sums of two squares, {:.2?}", start.elapsed()))
}

// -------------------------------------------------------------- cyclotomic

pub fn cyclotomic_suite() -> Check {
    for n in 1..=200u64 {
        let c = linear_coefficient(n).map_err(|e| e.to_string())?;
        let expected = if n == 1 { 1 } else { -mobius(n) as i64 };
        ensure!(c == expected, "linear coefficient of Phi_{n} is {c}");
    }
    for n in 1..=60u64 {
        for a in 2..=20i64 {
            let direct = eval_cyclotomic(n, &bi(a)).map_err(|e| e.to_string())?;
            ensure!(direct == phi_oracle(n, &bi(a)), "Phi_{n}({a}) disagrees with the product formula");
        }
        let product = divisors(n)
            .into_iter()
            .fold(sumsq_core::poly::Polynomial::one(), |acc, d| &acc * &*cyclotomic_poly(d).unwrap());
        ensure!(product == sumsq_core::poly::Polynomial::x_pow_minus_one(n as usize), "prod Phi_d != x^{n} - 1");
        if n % 2 == 1 && n >= 3 {
            for a in 2..=20i64 {
                let lhs = eval_cyclotomic(2 * n, &bi(a)).unwrap();
                ensure!(lhs == eval_cyclotomic(n, &bi(-a)).unwrap(), "Phi_{}({a}) != Phi_{n}(-{a})", 2 * n);
            }
        }
    }
    let mut cells = 0;
    for p in (2..=97u64).filter(|&p| is_prime(p)) {
        for a in 2..=20u64 {
            for n in 2..=60u64 {
                cells += 1;
                let phi = eval_cyclotomic(n, &bi(a as i64)).unwrap().to_biguint().unwrap();
                let v = exact_valuation(&bu(p), &phi).unwrap();
                let kind = prime_in_cyclotomic(&bu(p), n, &bu(a)).map_err(|e| e.to_string())?;
                ensure!((kind != PrimeDivisorKind::NotDivisor) == (v > 0), "p = {p}, a = {a}, n = {n}: {kind:?}, v = {v}");
                if kind == PrimeDivisorKind::IntrinsicDivisor && n >= 3 {
                    ensure!(v == 1, "intrinsic {p} divides Phi_{n}({a}) to power {v}");
                }
                if kind == PrimeDivisorKind::PrimitiveDivisor {
                    ensure!((p - 1) % n == 0, "primitive {p} for n = {n} is not 1 mod n");
                }
            }
        }
    }
    Ok(format!("{cells} divisor cells"))
}

// --------------------------------------------------------------- valuation

pub fn valuation_lifting(instances: usize, seed: u64) -> Check {
    ensure!(predict_valuation(&bu(7), &bu(6), 1, 7).ok() == Some(2), "fixture (7, 6, 1, 7)");
    ensure!(predict_valuation(&bu(3), &bu(11), 3, 27).ok() == Some(4), "fixture (3, 11, 3, 27)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes: Vec<u64> = (3..=60).filter(|&p| is_prime(p)).collect();
    let mut done = 0;
    while done < instances {
        let p = primes[rng.gen_range(0..primes.len())];
        let m = 2 * rng.gen_range(0..5u64) + 1;
        // a residue r with r^m = -1 (mod p), if any
        let roots: Vec<u64> = (1..p).filter(|&r| (bu(r).modpow(&bu(m), &bu(p)) + 1u32) % p == BigUint::zero()).collect();
        if roots.is_empty() {
            continue;
        }
        let a = roots[rng.gen_range(0..roots.len())] + p * rng.gen_range(0..6u64);
        let t = [1, 3, p, 3 * p, p * p][rng.gen_range(0..5)];
        let n = m * t;
        let predicted = predict_valuation(&bu(p), &bu(a), m, n).map_err(|e| e.to_string())?;
        let direct = exact_valuation(&bu(p), &pow1(a, n)).unwrap();
        ensure!(predicted == direct, "(p, a, m, n) = ({p}, {a}, {m}, {n}): {predicted} vs {direct}");
        done += 1;
    }
    Ok(format!("{done} instances"))
}

// ------------------------------------------------------------ aurifeuillian

pub fn aurifeuillian_suite() -> Check {
    let pairs = admissible_pairs(15, 60);
    for &(k, n) in &pairs {
        let pair = aurifeuillian_pair(k, n).map_err(|e| e.to_string())?;
        let deg = pair.f.degree().unwrap_or(0) as i64 * 2;
        // The identity has degree phi(n); check one more point than that.
        for x in 2..=(deg + 3) {
            let xb = bi(x);
            let rhs = pair.f.eval(&xb).pow(2) - bi(k) * xb.pow(pair.q as u32) * pair.g.eval(&xb).pow(2);
            ensure!(rhs == phi_oracle(n, &xb), "F^2 - k x^q G^2 != Phi_{n} at x = {x}, k = {k}");
        }
    }
    let mut splits = 0;
    for &(k, n) in pairs.iter().filter(|(k, _)| *k > 0) {
        for v in 1..=5u64 {
            let (f, g) = aurifeuillian_split(k, &bu(v), n).map_err(|e| e.to_string())?;
            let x = bi(k) * bi(v as i64).pow(2);
            ensure!(BigInt::from(&f * &g) == phi_oracle(n, &x), "split product for ({k}, {n}, {v})");
            ensure!(f.gcd(&g).is_one(), "split of Phi_{n}({x}) not coprime");
            splits += 1;
        }
    }
    let (x, y) = sots_of_phi(-5, &bu(1), 10).map_err(|e| e.to_string())?;
    ensure!((x, y) == (bu(11), bu(20)), "Phi_10(5) gave a different representation");
    ensure!(phi_oracle(10, &bi(5)) == bi(521), "Phi_10(5) != 521");
    Ok(format!("{} pairs, {splits} splits", pairs.len()))
}

// ---------------------------------------------------------- theorem suites

pub fn screen_soundness() -> Check {
    let mut rejected = 0;
    for a in 2..=50u64 {
        for n in odd_upto(15) {
            if let Some(r) = screen(&bu(a), n, &EffortBudget::default()).map_err(|e| e.to_string())? {
                ensure!(oracle_status(a, n) == Status::No, "screen {} rejected a sum of two squares ({a}, {n})", r.rule);
                rejected += 1;
            }
        }
    }
    Ok(format!("{rejected} rejections"))
}

pub fn decide_matches_oracle() -> Check {
    let c = Classifier::default();
    for a in 1..=50u64 {
        for n in odd_upto(15) {
            let r = c.decide(&bu(a), n).map_err(|e| e.to_string())?;
            ensure!(r.status == oracle_status(a, n), "({a}, {n}) via {}: {:?}", r.rule, r.status);
            r.check().map_err(|e| format!("({a}, {n}): {e}"))?;
        }
    }
    Ok("a <= 50, odd n <= 15".into())
}

pub fn theorem_even() -> Check {
    for a in (2..=50u64).step_by(2) {
        let a1 = a + 1;
        let bad: Vec<u64> = (3..=a1).filter(|&p| is_prime(p) && p % 4 == 3)
            .filter(|&p| exact_valuation(&bu(p), &bu(a1)).unwrap() % 2 == 1)
            .collect();
        for n in odd_upto(15) {
            if oracle_status(a, n) != Status::Yes {
                continue;
            }
            if bad.is_empty() {
                for d in divisors(n) {
                    ensure!(oracle_status(a, d) == Status::Yes, "a = {a}: n = {n} yes but delta = {d} no");
                }
            } else {
                ensure!(bad.len() == 1 && bad[0] == n, "a = {a}: n = {n} yes with bad primes {bad:?}");
            }
        }
    }
    Ok("even a <= 50, odd n <= 15".into())
}

pub fn theorem_four_x() -> Check {
    let c = Classifier::default();
    let mut count = 0;
    for x in (3..=25u64).step_by(4) {
        let squarefree = (2..=x).all(|p| x % (p * p) != 0);
        if !squarefree {
            continue;
        }
        for t in [1u64, 3] {
            let r = c.decide_by_factorization(&bu(4 * x), x * t).map_err(|e| e.to_string())?;
            ensure!(r.status == Status::No, "(4 * {x})^{} + 1 is {:?}", x * t, r.status);
            count += 1;
        }
    }
    Ok(format!("{count} instances"))
}

pub fn theorem_one_mod_eight() -> Check {
    let c = Classifier::default();
    let mut hits = 0;
    for a in (9..=100u64).step_by(8) {
        for n in odd_upto(15) {
            if c.decide(&bu(a), n).map_err(|e| e.to_string())?.status != Status::Yes {
                continue;
            }
            for d in divisors(n) {
                let s = c.decide(&bu(a), d).map_err(|e| e.to_string())?.status;
                ensure!(s == Status::Yes, "a = {a}: n = {n} yes but delta = {d} is {s:?}");
            }
            hits += 1;
        }
    }
    ensure!(hits > 0, "no positive instances");
    Ok(format!("{hits} positive cells"))
}

pub fn theorem_five_mod_eight() -> Check {
    for a in (5..=10_000u64).step_by(8) {
        for n in odd_upto(15) {
            let r = (bu(a).modpow(&bu(n), &bu(8)) + 1u32) % 8u32;
            ensure!(r == bu(6), "{a}^{n} + 1 = {r} mod 8");
        }
    }
    Ok("a <= 10^4".into())
}

fn m_oracle(a: u64) -> u64 {
    (1..=a + 1).find(|m| (a + 1).is_multiple_of(*m) && sots_u64((a + 1) / m)).unwrap()
}

pub fn theorem_three_mod_four() -> Check {
    let c = Classifier::default();
    let mut hits = 0;
    for a in (3..=100u64).step_by(4) {
        let m = m_oracle(a);
        for n in odd_upto(15) {
            let yes = c.decide(&bu(a), n).map_err(|e| e.to_string())?.status == Status::Yes;
            ensure!(yes == (oracle_status(a, n) == Status::Yes), "decide({a}, {n}) disagrees with factoring");
            if !yes {
                continue;
            }
            hits += 1;
            ensure!(n % 4 == m % 4, "a = {a}: n = {n} not congruent to m = {m} mod 4");
            ensure!(n % m == 0, "a = {a}: m = {m} does not divide n = {n}");
            ensure!(sots_u64(n / m), "a = {a}: n/m = {} not a sum of two squares", n / m);
            ensure!(oracle_status(a, m) == Status::Yes, "a = {a}: a^m + 1 not a sum of two squares");
            for d in divisors(n / m).into_iter().filter(|&d| sots_u64(d)) {
                ensure!(oracle_status(a, m * d) == Status::Yes, "a = {a}: a^(m {d}) + 1 fails");
            }
            for p in (3..=a + 1).filter(|&p| is_prime(p) && p % 4 == 3) {
                if exact_valuation(&bu(p), &bu(a + 1)).unwrap() % 2 == 1 {
                    let k = exact_valuation(&bu(p), &bu(n)).unwrap();
                    ensure!(k % 2 == 1, "a = {a}: {p}^{k} || n = {n} with k even");
                }
            }
        }
    }
    ensure!(hits > 0, "no positive instances");
    Ok(format!("{hits} positive cells"))
}

/// `a^{n p^2} + 1` a sum of two squares forces `p | a^n + 1`.
pub fn theorem_three_mod_four_square_clause() -> Check {
    let budget = EffortBudget { total_time_cap_ms: 10_000, ..EffortBudget::default() };
    let c = Classifier::new(budget);
    let mut hypothesis = 0;
    for a in (3..=100u64).step_by(4) {
        for n in [1u64, 3] {
            let r = c.decide_by_factorization(&bu(a), 9 * n).map_err(|e| e.to_string())?;
            if r.status != Status::Yes {
                continue;
            }
            hypothesis += 1;
            ensure!((pow1(a, n) % 3u32).is_zero(), "{a}^{} + 1 yes but 3 does not divide {a}^{n} + 1", 9 * n);
        }
    }
    ensure!(hypothesis > 0, "no instance satisfied the hypothesis");
    Ok(format!("{hypothesis} instances"))
}

pub fn general_gcd() -> Check {
    for a in 2..=30u64 {
        for delta in odd_upto(9) {
            for p in [3u64, 5, 7, 11, 13] {
                let small = pow1(a, delta);
                let big = pow1(a, delta * p);
                let g = small.gcd(&(&big / &small));
                ensure!((bu(p) % &g).is_zero(), "gcd for ({a}, {delta}, {p}) is {g}");
            }
        }
    }
    Ok("a <= 30".into())
}

pub fn m_minimality() -> Check {
    for a in (3..=500u64).step_by(4) {
        let mi = compute_m(&bu(a), &EffortBudget::default()).map_err(|e| e.to_string())?;
        ensure!(mi.m == bu(m_oracle(a)), "m({a}) = {} but the least is {}", mi.m, m_oracle(a));
    }
    Ok("a <= 500".into())
}

pub fn px2_equivalence() -> Check {
    let c = Classifier::default();
    let mut count = 0;
    for a in 2..=150u64 {
        let Ok(report) = px2_transfer(&c, &bu(a), 1) else {
            continue;
        };
        count += 1;
        ensure!(report.statuses_match(), "a = {a}: statuses differ");
        report.base.check().map_err(|e| format!("a = {a} base: {e}"))?;
        report.lifted.check().map_err(|e| format!("a = {a} lifted: {e}"))?;
        for w in &report.new_factors {
            let phi = phi_oracle(2 * w.delta, &bi(a as i64));
            ensure!(BigInt::from(&w.x * &w.x + &w.y * &w.y) == phi, "a = {a}: Phi_{}({a})", 2 * w.delta);
        }
    }
    ensure!(count >= 20, "only {count} bases of the form p v^2");
    Ok(format!("{count} bases"))
}

pub fn poly_family_suite() -> Check {
    let mut count = 0;
    for p in (5..=101u64).filter(|&p| is_prime(p) && p % 4 == 1) {
        let fam = poly_family(p).map_err(|e| e.to_string())?;
        let pb = bi(p as i64);
        let lhs = &fam.a.square().scale(&pb) + &sumsq_core::poly::Polynomial::one();
        ensure!(lhs == &fam.b.square() + &fam.c.square(), "p A^2 + 1 != B^2 + C^2 for p = {p}");
        ensure!(fam.f == fam.a.square().scale(&pb), "f != p A^2 for p = {p}");
        for x in 1..=3i64 {
            let fx = fam.f.eval_i64(x);
            let (g, h) = (fam.g.eval_i64(x), fam.h.eval_i64(x));
            ensure!(fx.pow(p as u32) + 1 == &g * &g + &h * &h, "f({x})^{p} + 1 != g^2 + h^2");
        }
        count += 1;
    }
    let fam = poly_family(13).map_err(|e| e.to_string())?;
    ensure!(fam.f.eval_i64(1) == bi(3328), "f(1) != 3328 for p = 13");
    let c = Classifier::default();
    let r = c.decide(&bu(3328), 13).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::Yes && r.verify(), "3328^13 + 1: {:?}", r.status);
    Ok(format!("{count} primes, 3328^13 + 1 via {}", r.rule))
}

// ----------------------------------------------------------------- density

pub fn density_suite() -> Check {
    let start = Instant::now();
    let brute = (1..=10_000u64).filter(|&m| sots_u64(m)).count() as u64;
    let s4 = density_ratio(10_000).map_err(|e| e.to_string())?;
    ensure!(s4.count == brute, "S(10^4) = {} but brute force gives {brute}", s4.count);
    let s5 = density_ratio(100_000).map_err(|e| e.to_string())?;
    let s6 = density_ratio(1_000_000).map_err(|e| e.to_string())?;
    ensure!((0.76..=0.85).contains(&s6.ratio), "ratio at 10^6 is {}", s6.ratio);
    ensure!(s4.ratio > s5.ratio && s5.ratio > s6.ratio, "ratios not decreasing");
    timed(Duration::from_secs(60), start, "density")?;
    Ok(format!("{:.4} > {:.4} > {:.4}", s4.ratio, s5.ratio, s6.ratio))
}
