//! Counting sums of two squares up to `x`.

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecMode;

/// Largest `x` the sieve accepts.
pub const DENSITY_MAX: u64 = 100_000_000;

const BLOCK: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub x: u64,
    /// Number of `1 <= m <= x` with `m = i^2 + j^2`.
    pub count: u64,
    /// `count * sqrt(ln x) / x`.
    pub ratio: f64,
}

fn count_block(lo: u64, hi: u64, marks: &mut Vec<bool>) -> u64 {
    marks.clear();
    marks.resize((hi - lo + 1) as usize, false);
    let mut i = 0u64;
    // j <= i, so i^2 <= hi and 2 i^2 >= lo bound the outer loop
    while i * i <= hi {
        if 2 * i * i >= lo {
            let j_lo = if i * i >= lo { 0 } else { (lo - i * i - 1).sqrt() + 1 };
            let mut j = j_lo;
            while j <= i && i * i + j * j <= hi {
                marks[(i * i + j * j - lo) as usize] = true;
                j += 1;
            }
        }
        i += 1;
    }
    marks.iter().filter(|&&m| m).count() as u64
}

/// `S(x)`, sieved block by block.
pub fn sieve_count(x: u64, mode: ExecMode) -> u64 {
    let blocks: Vec<(u64, u64)> = (0..x.div_ceil(BLOCK))
        .map(|b| (1 + b * BLOCK, ((b + 1) * BLOCK).min(x)))
        .collect();
    mode.map(&blocks, |&(lo, hi)| count_block(lo, hi, &mut Vec::new()))
        .into_iter()
        .sum()
}

pub fn density_ratio(x: u64) -> Result<DensitySample> {
    density_ratio_with(x, ExecMode::default())
}

pub fn density_ratio_with(x: u64, mode: ExecMode) -> Result<DensitySample> {
    if x < 2 {
        return Err(Error::OutOfRange { what: "x", value: x.to_string(), expected: ">= 2" });
    }
    if x > DENSITY_MAX {
        return Err(Error::OutOfRange { what: "x", value: x.to_string(), expected: "<= 10^8" });
    }
    let count = sieve_count(x, mode);
    let xf = x as f64;
    Ok(DensitySample { x, count, ratio: count as f64 * xf.ln().sqrt() / xf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_squares::brute_force_u64;

    #[test]
    fn small_counts() {
        let s = density_ratio(2).unwrap();
        assert_eq!(s.count, 2);
        assert!((s.ratio - 2f64.ln().sqrt()).abs() < 1e-12);
        assert_eq!(density_ratio(100).unwrap().count, 43);
        assert!(density_ratio(1).is_err());
        assert!(density_ratio(DENSITY_MAX + 1).is_err());
    }

    #[test]
    fn matches_brute_force_across_block_edges() {
        for x in [BLOCK - 1, BLOCK, BLOCK + 1, 3 * BLOCK + 7] {
            let oracle = (1..=x).filter(|&m| brute_force_u64(m).is_some()).count() as u64;
            assert_eq!(sieve_count(x, ExecMode::Sequential), oracle, "x = {x}");
            assert_eq!(sieve_count(x, ExecMode::Parallel), oracle, "x = {x}");
        }
    }
}
