//! Brute-force generation of a permutation class, level by level.
//!
//! Every class is closed under deleting the last entry, so the avoiders of
//! length `n+1` are exactly the one-point extensions (new last entry of
//! every relative value) of avoiders of length `n` that create no basis
//! pattern. Only occurrences that use the new entry need to be checked.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permcore::{Basis, Permutation, Statistic};

pub const DEFAULT_NODE_BUDGET: u128 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_NODE_BUDGET`].
pub const BUDGET_ENV: &str = "PERMCLASS_NODE_BUDGET";

const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Oracle,
    FunctionalEquation,
}

/// Per-length counts, with optional statistic distributions
/// `m[n][k] = #{length-n members with statistic value k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub basis: Basis,
    pub max_length: usize,
    pub counts: Vec<BigUint>,
    pub distributions: BTreeMap<String, Vec<Vec<BigUint>>>,
    pub provenance: Provenance,
}

impl CountReport {
    pub fn distribution(&self, stat: Statistic) -> Option<&Vec<Vec<BigUint>>> {
        self.distributions.get(stat.name())
    }

    /// Golden-file form: one `n<TAB>count` line per length.
    pub fn counts_tsv(&self) -> String {
        let mut out = String::new();
        for (n, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{n}\t{c}");
        }
        out
    }

    /// Golden-file form of a distribution: CSV `n,k,count`, nonzero entries
    /// only.
    pub fn distribution_csv(&self, stat: Statistic) -> Option<String> {
        let m = self.distribution(stat)?;
        Some(distribution_to_csv(m))
    }
}

pub fn distribution_to_csv(m: &[Vec<BigUint>]) -> String {
    let mut out = String::from("n,k,count\n");
    for (n, row) in m.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            if *c != BigUint::default() {
                let _ = writeln!(out, "{n},{k},{c}");
            }
        }
    }
    out
}

pub fn parse_counts_tsv(s: &str) -> Result<Vec<BigUint>> {
    let mut out = Vec::new();
    for (i, line) in s.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let (n, c) =
            line.split_once('\t').ok_or_else(|| Error::Parse(format!("line {}: expected `n<TAB>count`", i + 1)))?;
        let n: usize = n.trim().parse().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        if n != out.len() {
            return Err(Error::Parse(format!("line {}: length {n} out of sequence", i + 1)));
        }
        out.push(c.trim().parse().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

pub fn parse_distribution_csv(s: &str) -> Result<Vec<Vec<BigUint>>> {
    let mut m: Vec<Vec<BigUint>> = Vec::new();
    for (i, line) in s.lines().enumerate() {
        if i == 0 && line.starts_with('n') || line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        let [n, k, c] = parts[..] else {
            return Err(Error::Parse(format!("line {}: expected `n,k,count`", i + 1)));
        };
        let err = |e: std::num::ParseIntError| Error::Parse(format!("line {}: {e}", i + 1));
        let n: usize = n.trim().parse().map_err(err)?;
        let k: usize = k.trim().parse().map_err(err)?;
        let c: BigUint = c.trim().parse().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        if m.len() <= n {
            m.resize(n + 1, Vec::new());
        }
        if m[n].len() <= k {
            m[n].resize(k + 1, BigUint::default());
        }
        m[n][k] = c;
    }
    Ok(m)
}

/// Which members of the class are tallied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Filter {
    All,
    /// Nonempty permutations starting with their smallest entry.
    SingleSlice,
}

impl Filter {
    fn keep(self, perm: &[u8]) -> bool {
        match self {
            Filter::All => true,
            Filter::SingleSlice => perm.first() == Some(&1),
        }
    }
}

/// The generator, parameterized by its node budget (number of one-point
/// extensions attempted).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    budget: u128,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { budget: DEFAULT_NODE_BUDGET }
    }
}

impl Oracle {
    pub fn with_budget(budget: u128) -> Self {
        Oracle { budget }
    }

    /// Default budget unless [`BUDGET_ENV`] is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                v.trim().parse().map(Oracle::with_budget).map_err(|e| Error::Parse(format!("{BUDGET_ENV}={v}: {e}")))
            }
            Err(_) => Ok(Oracle::default()),
        }
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    pub fn enumerate_avoiders(&self, b: &Basis, n_max: usize) -> Result<CountReport> {
        self.run(b, n_max, &[], Filter::All)
    }

    pub fn statistic_distribution(&self, b: &Basis, n_max: usize, stats: &[Statistic]) -> Result<CountReport> {
        self.run(b, n_max, stats, Filter::All)
    }

    /// Distribution of `stat` over the nonempty avoiders starting with 1.
    pub fn single_slice_distribution(&self, b: &Basis, n_max: usize, stat: Statistic) -> Result<CountReport> {
        self.run(b, n_max, &[stat], Filter::SingleSlice)
    }

    fn run(&self, b: &Basis, n_max: usize, stats: &[Statistic], filter: Filter) -> Result<CountReport> {
        if n_max > 30 {
            return Err(Error::InvalidArgument(format!("length {n_max} is beyond the oracle's range")));
        }
        let checks: Vec<Check> = b.patterns().iter().map(Check::new).collect();
        let mut tallies: Vec<Tally> = Vec::with_capacity(n_max + 1);
        let mut level: Vec<u8> = Vec::new();
        let mut level_count: usize = 1;
        let mut spent: u128 = 0;
        tallies.push(Tally::of_level(&level, 0, stats, filter));
        for n in 0..n_max {
            let projected = spent + level_count as u128 * (n as u128 + 1);
            if projected > self.budget {
                return Err(Error::BudgetExceeded { projected, budget: self.budget });
            }
            spent = projected;
            let last = n + 1 == n_max;
            if last && stats.is_empty() && filter == Filter::All {
                let count: u64 = chunks(&level, n)
                    .map(|parents| {
                        let mut c = 0u64;
                        for_each_parent(parents, n, |p| c += u64::from(allowed_mask(&checks, p).count_ones()));
                        c
                    })
                    .sum();
                tallies.push(Tally::counted(count, n + 1, stats));
                break;
            }
            if last {
                let tally = chunks(&level, n)
                    .map(|parents| {
                        let mut t = Tally::empty(n + 1, stats);
                        let mut buf = Vec::with_capacity(n + 1);
                        for_each_parent(parents, n, |p| {
                            let mask = allowed_mask(&checks, p);
                            for v in 1..=n as u8 + 1 {
                                if mask & (1 << v) != 0 {
                                    extend_into(&mut buf, p, v);
                                    t.add(&buf, stats, filter);
                                }
                            }
                        });
                        t
                    })
                    .reduce(|| Tally::empty(n + 1, stats), Tally::merge);
                tallies.push(tally);
                break;
            }
            let parts: Vec<Vec<u8>> = chunks(&level, n)
                .map(|parents| {
                    let mut out = Vec::new();
                    let mut buf = Vec::with_capacity(n + 1);
                    for_each_parent(parents, n, |p| {
                        let mask = allowed_mask(&checks, p);
                        for v in 1..=n as u8 + 1 {
                            if mask & (1 << v) != 0 {
                                extend_into(&mut buf, p, v);
                                out.extend_from_slice(&buf);
                            }
                        }
                    });
                    out
                })
                .collect();
            level = parts.concat();
            level_count = level.len() / (n + 1);
            let tally = level
                .par_chunks(CHUNK * (n + 1))
                .map(|c| Tally::of_level(c, n + 1, stats, filter))
                .reduce(|| Tally::empty(n + 1, stats), Tally::merge);
            tallies.push(tally);
            if level_count == 0 {
                for m in n + 2..=n_max {
                    tallies.push(Tally::empty(m, stats));
                }
                break;
            }
        }
        Ok(assemble(b, n_max, stats, tallies))
    }
}

pub fn enumerate_avoiders(b: &Basis, n_max: usize) -> Result<CountReport> {
    Oracle::from_env()?.enumerate_avoiders(b, n_max)
}

pub fn statistic_distribution(b: &Basis, n_max: usize, stat: Statistic) -> Result<CountReport> {
    Oracle::from_env()?.statistic_distribution(b, n_max, &[stat])
}

/// Single-slice permutations are tallied by [`Statistic::TrailingMarks`],
/// the exponent of `t` they carry in `s(z,t)`.
pub fn single_slice_distribution(b: &Basis, n_max: usize) -> Result<CountReport> {
    Oracle::from_env()?.single_slice_distribution(b, n_max, Statistic::TrailingMarks)
}

/// Counts by testing every permutation of each length; only practical for
/// small lengths, and independent of the extension machinery.
pub fn filter_all_counts(b: &Basis, n_max: usize) -> Vec<BigUint> {
    (0..=n_max).map(|n| BigUint::from(Permutation::all(n).filter(|p| p.avoids(b)).count())).collect()
}

/// Parent chunks of a level (stride `n`), processed in parallel in order.
fn chunks(level: &[u8], n: usize) -> rayon::slice::Chunks<'_, u8> {
    if n == 0 {
        // the level holding only the empty permutation
        static ROOT: [u8; 1] = [0];
        return ROOT.par_chunks(1);
    }
    level.par_chunks(CHUNK * n)
}

fn for_each_parent(parents: &[u8], n: usize, mut f: impl FnMut(&[u8])) {
    if n == 0 {
        f(&[]);
        return;
    }
    for p in parents.chunks(n) {
        f(p);
    }
}

/// The child of `p` whose last entry has rank `v` among `1..=n+1`.
fn extend_into(buf: &mut Vec<u8>, p: &[u8], v: u8) {
    buf.clear();
    buf.extend(p.iter().map(|&x| if x >= v { x + 1 } else { x }));
    buf.push(v);
}

/// One basis pattern, split into the prefix whose occurrences in a parent
/// are enumerated and the relative position of its last entry.
struct Check {
    prefix: Vec<u8>,
    below: Vec<bool>,
}

impl Check {
    fn new(sigma: &Permutation) -> Self {
        let e = sigma.entries();
        let (last, head) = e.split_last().expect("basis patterns are nonempty");
        let prefix = Permutation::standardize(head).entries().iter().map(|&x| x as u8).collect();
        let below = head.iter().map(|x| x < last).collect();
        Check { prefix, below }
    }
}

/// Bit `v` is set when appending rank `v` to `p` avoids every pattern.
fn allowed_mask(checks: &[Check], p: &[u8]) -> u32 {
    let n = p.len();
    let all: u32 = ((1u32 << (n + 1)) - 1) << 1;
    let mut forbidden = 0u32;
    let mut chosen = Vec::with_capacity(4);
    for c in checks {
        occurrences(p, c, 0, &mut chosen, &mut forbidden);
        if forbidden & all == all {
            break;
        }
    }
    all & !forbidden
}

fn occurrences(p: &[u8], c: &Check, start: usize, chosen: &mut Vec<u8>, forbidden: &mut u32) {
    let d = chosen.len();
    let n = p.len();
    if d == c.prefix.len() {
        let mut lo = 0u8;
        let mut hi = n as u8 + 1;
        for (j, &x) in chosen.iter().enumerate() {
            if c.below[j] {
                lo = lo.max(x);
            } else {
                hi = hi.min(x);
            }
        }
        if lo < hi {
            // ranks lo+1 ..= hi
            *forbidden |= ((1u32 << (hi - lo)) - 1) << (lo + 1);
        }
        return;
    }
    let need = c.prefix.len() - d;
    for i in start..=n.saturating_sub(need) {
        if i >= n {
            break;
        }
        let x = p[i];
        let ok = chosen.iter().enumerate().all(|(e, &y)| (x < y) == (c.prefix[d] < c.prefix[e]));
        if ok {
            chosen.push(x);
            occurrences(p, c, i + 1, chosen, forbidden);
            chosen.pop();
        }
    }
}

#[derive(Clone, Debug)]
struct Tally {
    count: u64,
    dists: Vec<Vec<u64>>,
}

impl Tally {
    fn empty(n: usize, stats: &[Statistic]) -> Self {
        Tally { count: 0, dists: vec![vec![0; n + 2]; stats.len()] }
    }

    fn counted(count: u64, n: usize, stats: &[Statistic]) -> Self {
        Tally { count, ..Tally::empty(n, stats) }
    }

    fn add(&mut self, perm: &[u8], stats: &[Statistic], filter: Filter) {
        if !filter.keep(perm) {
            return;
        }
        self.count += 1;
        for (d, s) in self.dists.iter_mut().zip(stats) {
            d[s.eval(perm)] += 1;
        }
    }

    fn of_level(level: &[u8], n: usize, stats: &[Statistic], filter: Filter) -> Self {
        let mut t = Tally::empty(n, stats);
        if n == 0 {
            t.add(&[], stats, filter);
            return t;
        }
        for p in level.chunks(n) {
            t.add(p, stats, filter);
        }
        t
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.count += other.count;
        for (a, b) in self.dists.iter_mut().zip(other.dists) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self
    }
}

fn assemble(b: &Basis, n_max: usize, stats: &[Statistic], tallies: Vec<Tally>) -> CountReport {
    let counts = tallies.iter().map(|t| BigUint::from(t.count)).collect();
    let mut distributions = BTreeMap::new();
    for (i, s) in stats.iter().enumerate() {
        let m = tallies.iter().map(|t| t.dists[i].iter().map(|&c| BigUint::from(c)).collect()).collect();
        distributions.insert(s.name().to_string(), m);
    }
    CountReport { basis: b.clone(), max_length: n_max, counts, distributions, provenance: Provenance::Oracle }
}
