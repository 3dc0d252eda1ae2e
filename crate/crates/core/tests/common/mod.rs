#![allow(dead_code)]

use num_bigint::BigUint;
use permclass::oracle::{parse_counts_tsv, parse_distribution_csv};

pub const CLASS_A_COUNTS: &str = include_str!("../golden/class_a_counts.tsv");
pub const CLASS_B_COUNTS: &str = include_str!("../golden/class_b_counts.tsv");
pub const CLASS_A_IDR: &str = include_str!("../golden/class_a_initial_decreasing_run.csv");
pub const CLASS_B_MARKS: &str = include_str!("../golden/class_b_trailing_marks.csv");
pub const CLASS_B_RUN: &str = include_str!("../golden/class_b_trailing_increasing_run.csv");
pub const CLASS_B_SINGLE_SLICE: &str = include_str!("../golden/class_b_single_slice.csv");

pub fn counts(tsv: &str) -> Vec<BigUint> {
    parse_counts_tsv(tsv).expect("golden counts parse")
}

pub fn distribution(csv: &str) -> Vec<Vec<BigUint>> {
    parse_distribution_csv(csv).expect("golden distribution parses")
}

pub fn nat(v: u64) -> BigUint {
    BigUint::from(v)
}

/// `m[n][k]`, with missing entries read as zero.
pub fn entry(m: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    m.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
}

/// Equality of two tables on rows `0..=n_max`, ignoring trailing zeros.
pub fn tables_agree(a: &[Vec<BigUint>], b: &[Vec<BigUint>], n_max: usize) -> bool {
    (0..=n_max).all(|n| {
        let w = a.get(n).map_or(0, Vec::len).max(b.get(n).map_or(0, Vec::len));
        (0..w).all(|k| entry(a, n, k) == entry(b, n, k))
    })
}
