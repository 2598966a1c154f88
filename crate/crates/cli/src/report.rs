//! Human-readable renderings.

use std::fmt::Write as _;

use num_bigint::BigUint;
use sumsq_core::aurifeuillian::AurifeuillianPair;
use sumsq_core::classifier::{Certificate, ClassificationRecord, NonSotsWitness, PolyFamily};
use sumsq_core::poly::Polynomial;
use sumsq_core::selftest::SelftestReport;
use sumsq_core::two_squares::{DensitySample, NoCertificate, TwoSquaresVerdict};

fn status_word(s: sumsq_core::two_squares::Status) -> &'static str {
    match s {
        sumsq_core::two_squares::Status::Yes => "yes",
        sumsq_core::two_squares::Status::No => "no",
        sumsq_core::two_squares::Status::Unknown => "unknown",
    }
}

fn join(xs: &[BigUint]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn certificate(r: &ClassificationRecord) -> String {
    let (a, n) = (&r.a, r.n);
    match &r.certificate {
        Certificate::Witness { x, y } => format!("{a}^{n} + 1 = {x}^2 + {y}^2"),
        Certificate::BadPrime { p, r } => format!("{p}^{r} exactly divides {a}^{n} + 1, {p} = 3 mod 4"),
        Certificate::Cofactor3Mod4 { cofactor } => {
            format!("{cofactor} = 3 mod 4 divides {a}^{n} + 1 and is coprime to the quotient")
        }
        Certificate::OddPartThreeMod4 { two_adic } => {
            format!("{a}^{n} + 1 = 2^{two_adic} * m with m = 3 mod 4")
        }
        Certificate::BadPrimesOfAPlusOne { primes } => {
            format!("primes 3 mod 4 to an odd power in {a} + 1: {}", join(primes))
        }
        Certificate::FourX { x } => format!("a = 4 * {x}, {x} = 3 mod 4 squarefree, {x} divides n"),
        Certificate::MDoesNotDivide { m } => format!("m = {m} does not divide n = {n}"),
        Certificate::QuotientNotSots { m, p, r } => {
            format!("n/m = {n}/{m} has {p}^{r} exactly, {p} = 3 mod 4")
        }
        Certificate::SquareClause { p, reduced } => {
            format!("n = {reduced} * {p}^2 and {p} does not divide {a}^{reduced} + 1")
        }
        Certificate::Divisor { delta, inner } => {
            format!("{a}^{delta} + 1 is not a sum of two squares [{}: {}]", inner.rule, certificate(inner))
        }
        Certificate::Transfer { p, v, reduced, inner } => format!(
            "a = {p} * {v}^2, n = {reduced} * {p}, and {a}^{reduced} + 1 is {} [{}: {}]",
            status_word(inner.status),
            inner.rule,
            certificate(inner)
        ),
        Certificate::Blocking { cofactor } => format!("unfactored cofactor {cofactor}"),
    }
}

pub fn record(r: &ClassificationRecord) -> String {
    format!(
        "{}^{} + 1: {}\nrule: {}\ncertificate: {}\n",
        r.a,
        r.n,
        status_word(r.status),
        r.rule,
        certificate(r)
    )
}

pub fn verdict(n: &BigUint, v: &TwoSquaresVerdict) -> String {
    let detail = match v {
        TwoSquaresVerdict::Yes { x, y } => format!("{n} = {x}^2 + {y}^2"),
        TwoSquaresVerdict::No { certificate: NoCertificate::BadPrime { p, r } } => {
            format!("{p}^{r} exactly divides {n}, {p} = 3 mod 4")
        }
        TwoSquaresVerdict::No { certificate: NoCertificate::Cofactor3Mod4 { cofactor } } => {
            format!("{cofactor} = 3 mod 4 divides {n} and is coprime to the quotient")
        }
        TwoSquaresVerdict::Unknown { blocking_cofactor } => format!("unfactored cofactor {blocking_cofactor}"),
    };
    format!("{n}: {}\ncertificate: {detail}\n", status_word(v.status()))
}

pub fn witness(w: &NonSotsWitness) -> String {
    format!("n = {} (q = {})\n{}", w.n, w.q, record(&w.record))
}

pub fn aurifeuille(p: &AurifeuillianPair) -> String {
    let sign = if p.k < 0 { "+" } else { "-" };
    let mut out = String::new();
    let xq = if p.q == 1 { "x".to_string() } else { format!("x^{}", p.q) };
    let _ = writeln!(out, "Phi_{}(x) = F(x)^2 {sign} {} {xq} G(x)^2", p.n, p.k.unsigned_abs());
    let _ = writeln!(out, "F = {}", p.f);
    let _ = writeln!(out, "G = {}", p.g);
    out
}

fn in_capital_x(poly: &Polynomial) -> String {
    poly.to_string().replace('x', "X")
}

pub fn family(f: &PolyFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {} = {}^2 + {}^2", f.p, f.u, f.v);
    let _ = writeln!(out, "f(X) = {}({})^2", f.p, in_capital_x(&f.a));
    for (name, poly) in [("A", &f.a), ("B", &f.b), ("C", &f.c), ("f", &f.f), ("g", &f.g), ("h", &f.h)] {
        let _ = writeln!(out, "{name}(X) = {}", in_capital_x(poly));
    }
    let _ = writeln!(out, "f(X)^{} + 1 = g(X)^2 + h(X)^2", f.p);
    out
}

pub fn density(d: &DensitySample) -> String {
    format!("S({}) = {}\nratio = {:.6}\n", d.x, d.count, d.ratio)
}

pub fn selftest(r: &SelftestReport) -> String {
    let mut out = String::new();
    for c in &r.cases {
        let _ = writeln!(out, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    let _ = writeln!(out, "{} passed, {} failed", r.passed, r.failed);
    out
}
