//! Tables of the odd `n <= n_max` with `a^n + 1` a sum of two squares.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{px2_form, residue, Certificate, Classifier};
use crate::arith::perfect_square_root;
use crate::error::Result;
use crate::serde_dec;
use crate::two_squares::Status;

/// The theorem a row is attributed to, one per base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    PerfectSquare,
    Even,
    OneModEight,
    FiveModEight,
    ThreeModFour,
    Px2,
}

impl Property {
    pub fn theorem(self) -> u8 {
        match self {
            Property::PerfectSquare => 1,
            Property::Even => 2,
            Property::OneModEight => 4,
            Property::FiveModEight => 5,
            Property::ThreeModFour => 6,
            Property::Px2 => 7,
        }
    }

    pub fn label(self) -> String {
        format!("Thm {}", self.theorem())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownCell {
    pub n: u64,
    #[serde(with = "serde_dec")]
    pub blocking_cofactor: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartRow {
    pub a: u64,
    pub property: Property,
    /// `a` is a perfect square, so every `n` qualifies.
    pub all: bool,
    pub yes: Vec<u64>,
    pub unknown: Vec<UnknownCell>,
}

impl ChartRow {
    /// `all`, `-`, or the comma-separated list.
    pub fn render_exponents(&self) -> String {
        if self.all {
            "all".into()
        } else if self.yes.is_empty() {
            "-".into()
        } else {
            self.yes.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
        }
    }
}

fn property(classifier: &Classifier, a: u64) -> Result<Property> {
    let ab = BigUint::from(a);
    Ok(if perfect_square_root(&ab).is_some() {
        Property::PerfectSquare
    } else if a.is_multiple_of(2) {
        Property::Even
    } else if a % 8 == 5 {
        Property::FiveModEight
    } else if a % 4 == 3 {
        Property::ThreeModFour
    } else {
        let a1 = classifier.factor(&(&ab + 1u32))?;
        let a1_sots = a1.is_complete() && a1.factors.iter().all(|(p, e)| residue(p, 4) != 3 || e % 2 == 0);
        if a1_sots && px2_form(classifier, &ab)?.is_some() {
            Property::Px2
        } else {
            Property::OneModEight
        }
    })
}

fn row(classifier: &Classifier, a: u64, n_max: u64) -> Result<ChartRow> {
    let ab = BigUint::from(a);
    let mut out = ChartRow {
        a,
        property: property(classifier, a)?,
        all: perfect_square_root(&ab).is_some(),
        yes: Vec::new(),
        unknown: Vec::new(),
    };
    for n in (1..=n_max).step_by(2) {
        let r = classifier.decide(&ab, n)?;
        match (r.status, r.certificate) {
            (Status::Yes, _) => out.yes.push(n),
            (Status::Unknown, Certificate::Blocking { cofactor }) => {
                out.unknown.push(UnknownCell { n, blocking_cofactor: cofactor })
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Rows for `1 <= a <= a_max` over odd `n <= n_max`, evaluated per base in
/// the classifier's execution mode and returned in order of `a`.
pub fn chart(classifier: &Classifier, a_max: u64, n_max: u64) -> Result<Vec<ChartRow>> {
    let bases: Vec<u64> = (1..=a_max).collect();
    classifier
        .mode()
        .map(&bases, |&a| row(classifier, a, n_max))
        .into_iter()
        .collect()
}

/// Plain-text table, one row per base.
pub fn render_text(rows: &[ChartRow]) -> String {
    let mut out = String::new();
    let width = rows.iter().map(|r| r.render_exponents().len()).max().unwrap_or(1).max(1);
    let _ = writeln!(out, "{:>4}  {:<width$}  Property", "a", "n");
    for r in rows {
        let _ = write!(out, "{:>4}  {:<width$}  {}", r.a, r.render_exponents(), r.property.label());
        if !r.unknown.is_empty() {
            let cells: Vec<String> = r.unknown.iter().map(|u| u.n.to_string()).collect();
            let _ = write!(out, "  unknown: {}", cells.join(", "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::EffortBudget;

    #[test]
    fn small_chart() {
        let c = Classifier::new(EffortBudget::default());
        let rows = chart(&c, 25, 13).unwrap();
        assert_eq!(rows.len(), 25);
        let by_a = |a: usize| &rows[a - 1];
        assert_eq!(by_a(3).yes, vec![1, 5, 13]);
        assert_eq!(by_a(22).render_exponents(), "-");
        assert_eq!(by_a(25).render_exponents(), "all");
        assert_eq!(by_a(6).yes, vec![7]);
        assert_eq!(by_a(17).property, Property::Px2);
        assert_eq!(by_a(12).property, Property::Even);
        assert!(rows.iter().all(|r| r.unknown.is_empty()));
        let text = render_text(&rows);
        assert!(text.contains("  3  1, 5, 13"));
    }
}
