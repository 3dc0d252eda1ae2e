//! Permutations in one-line notation, pattern containment, and the
//! statistics that the two functional equations track.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation. The empty permutation is
/// a valid value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            let idx = e as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::InvalidArgument(format!("{entries:?} is not a permutation of 1..={n}")));
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { entries: (1..=n as u32).collect() }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation { entries: (1..=n as u32).rev().collect() }
    }

    /// Order-isomorphic standardization of a sequence of distinct values.
    pub fn standardize<T: Ord + Copy>(values: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by_key(|&i| values[i]);
        let mut entries = vec![0u32; values.len()];
        for (rank, &i) in idx.iter().enumerate() {
            entries[i] = rank as u32 + 1;
        }
        Permutation { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Permutation::identity(n));
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut e = cur.entries.clone();
            if next_lex(&mut e) {
                next = Some(Permutation { entries: e });
            }
            Some(cur)
        })
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains(self, pattern)
    }

    pub fn avoids(&self, basis: &Basis) -> bool {
        avoids_basis(self, basis)
    }
}

fn next_lex(e: &mut [u32]) -> bool {
    let n = e.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && e[i - 1] >= e[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while e[j] <= e[i - 1] {
        j -= 1;
    }
    e.swap(i - 1, j);
    e[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ε");
        }
        if self.entries.len() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts comma-free digit strings (`2413`), comma-separated integers
    /// (`11,14,6,...`), and `ε` or the empty string for the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Permutation::empty());
        }
        let entries: Result<Vec<u32>> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad entry `{p}`: {e}"))))
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{s}`")))).collect()
        };
        Permutation::new(entries?)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

/// An antichain of patterns under containment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    patterns: Vec<Permutation>,
}

impl Basis {
    pub fn new(mut patterns: Vec<Permutation>) -> Result<Self> {
        patterns.sort();
        patterns.dedup();
        for (i, a) in patterns.iter().enumerate() {
            for (j, b) in patterns.iter().enumerate() {
                if i != j && contains(a, b) {
                    return Err(Error::InvalidArgument(format!("basis is not an antichain: {a} contains {b}")));
                }
            }
        }
        Ok(Basis { patterns })
    }

    pub fn parse(patterns: &[&str]) -> Result<Self> {
        let ps: Result<Vec<Permutation>> = patterns.iter().map(|s| s.parse()).collect();
        Basis::new(ps?)
    }

    /// The basis {2413, 3412}.
    pub fn class_a() -> Self {
        Basis::parse(&["2413", "3412"]).expect("valid basis")
    }

    /// The basis {1432, 2143}.
    pub fn class_b() -> Self {
        Basis::parse(&["1432", "2143"]).expect("valid basis")
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Whether some subsequence of `host` is order-isomorphic to `pattern`.
pub fn contains(host: &Permutation, pattern: &Permutation) -> bool {
    contains_slice(&host.entries, &pattern.entries)
}

/// Backtracking search over increasing index tuples. A partial choice is
/// extended only while it stays order-isomorphic to the pattern prefix.
pub fn contains_slice<T: Ord + Copy, U: Ord + Copy>(host: &[T], pattern: &[U]) -> bool {
    let k = pattern.len();
    if k == 0 {
        return true;
    }
    if k > host.len() {
        return false;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    search(host, pattern, 0, &mut chosen)
}

fn search<T: Ord + Copy, U: Ord + Copy>(host: &[T], pattern: &[U], start: usize, chosen: &mut Vec<usize>) -> bool {
    let depth = chosen.len();
    if depth == pattern.len() {
        return true;
    }
    let remaining = pattern.len() - depth;
    for i in start..=host.len() - remaining {
        let v = host[i];
        let consistent = chosen.iter().enumerate().all(|(d, &j)| (host[j] < v) == (pattern[d] < pattern[depth]));
        if consistent {
            chosen.push(i);
            if search(host, pattern, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

pub fn avoids_basis(p: &Permutation, b: &Basis) -> bool {
    b.patterns.iter().all(|s| !contains(p, s))
}

/// `p ⊕ q`: `q` placed above and to the right of `p`.
pub fn direct_sum(p: &Permutation, q: &Permutation) -> Permutation {
    let k = p.len() as u32;
    let mut entries = p.entries.clone();
    entries.extend(q.entries.iter().map(|&e| e + k));
    Permutation { entries }
}

/// `p ⊖ q`: `q` placed below and to the right of `p`.
pub fn skew_sum(p: &Permutation, q: &Permutation) -> Permutation {
    let l = q.len() as u32;
    let mut entries: Vec<u32> = p.entries.iter().map(|&e| e + l).collect();
    entries.extend_from_slice(&q.entries);
    Permutation { entries }
}

/// The finest decomposition `p = σ₁ ⊖ ··· ⊖ σ_k` into skew-indecomposable
/// blocks. The empty permutation has no components.
pub fn skew_components(p: &Permutation) -> Vec<Permutation> {
    let n = p.len();
    let mut out = Vec::new();
    let mut start = 0;
    let mut min_so_far = u32::MAX;
    for i in 0..n {
        min_so_far = min_so_far.min(p.entries[i]);
        // prefix 0..=i sits entirely above the rest iff its minimum equals n - i
        if min_so_far as usize == n - i {
            out.push(Permutation::standardize(&p.entries[start..=i]));
            start = i + 1;
        }
    }
    out
}

pub fn is_skew_indecomposable(p: &Permutation) -> bool {
    skew_components(p).len() == 1
}

/// Length of the maximal strictly decreasing prefix.
pub fn initial_decreasing_run<T: Ord + Copy>(entries: &[T]) -> usize {
    if entries.is_empty() {
        return 0;
    }
    1 + entries.windows(2).take_while(|w| w[0] > w[1]).count()
}

/// Length of the maximal strictly increasing suffix.
pub fn trailing_increasing_run<T: Ord + Copy>(entries: &[T]) -> usize {
    if entries.is_empty() {
        return 0;
    }
    1 + entries.windows(2).rev().take_while(|w| w[0] < w[1]).count()
}

/// Number of insertion regions to the right of the last descent top:
/// one more than the trailing increasing run.
pub fn gap_count<T: Ord + Copy>(entries: &[T]) -> Result<usize> {
    if entries.is_empty() {
        return Err(Error::InvalidArgument("gap_count is undefined for the empty permutation".into()));
    }
    Ok(trailing_increasing_run(entries) + 1)
}

/// The exponent of `t` carried by a permutation in the slice-based
/// functional equation: the entries of the trailing increasing run that are
/// not left-to-right minima. Only the first entry of the run can be one, and
/// a new slice cannot open a gap to its left.
pub fn trailing_marks<T: Ord + Copy>(entries: &[T]) -> usize {
    let run = trailing_increasing_run(entries);
    if run == 0 {
        return 0;
    }
    let start = entries.len() - run;
    let first = entries[start];
    run - usize::from(entries[..start].iter().all(|&x| x > first))
}

/// Positions of the left-to-right minima.
pub fn left_to_right_minima<T: Ord + Copy>(entries: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur: Option<T> = None;
    for (i, &e) in entries.iter().enumerate() {
        if cur.is_none_or(|c| e < c) {
            out.push(i);
            cur = Some(e);
        }
    }
    out
}

/// Partition of the positions of a permutation into slices: slice `k`
/// holds the entries at or above the `k`-th left-to-right minimum and
/// strictly below the `(k-1)`-th.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDecomposition {
    pub slices: Vec<Vec<usize>>,
}

impl SliceDecomposition {
    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }
}

pub fn slices(p: &Permutation) -> SliceDecomposition {
    let e = &p.entries;
    let minima: Vec<u32> = left_to_right_minima(e).into_iter().map(|i| e[i]).collect();
    let mut slices = vec![Vec::new(); minima.len()];
    for (pos, &v) in e.iter().enumerate() {
        // minima values are decreasing; the slice is the first minimum <= v
        let k = minima.iter().position(|&m| m <= v).expect("1 is always a minimum");
        slices[k].push(pos);
    }
    SliceDecomposition { slices }
}

pub fn slice_count<T: Ord + Copy>(entries: &[T]) -> usize {
    left_to_right_minima(entries).len()
}

/// The statistics the oracle can tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    InitialDecreasingRun,
    TrailingIncreasingRun,
    GapCount,
    SliceCount,
    TrailingMarks,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::InitialDecreasingRun,
        Statistic::TrailingIncreasingRun,
        Statistic::GapCount,
        Statistic::SliceCount,
        Statistic::TrailingMarks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::InitialDecreasingRun => "initial_decreasing_run",
            Statistic::TrailingIncreasingRun => "trailing_increasing_run",
            Statistic::GapCount => "gap_count",
            Statistic::SliceCount => "slice_count",
            Statistic::TrailingMarks => "trailing_marks",
        }
    }

    /// Value on a permutation; the empty permutation gets 0 for every
    /// statistic, including `gap_count`, so that distributions have a row 0.
    pub fn eval<T: Ord + Copy>(self, entries: &[T]) -> usize {
        match self {
            Statistic::InitialDecreasingRun => initial_decreasing_run(entries),
            Statistic::TrailingIncreasingRun => trailing_increasing_run(entries),
            Statistic::GapCount => gap_count(entries).unwrap_or(0),
            Statistic::SliceCount => slice_count(entries),
            Statistic::TrailingMarks => trailing_marks(entries),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s || st.name().replace('_', "-") == s)
            .ok_or_else(|| Error::Parse(format!("unknown statistic `{s}`")))
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn naive_contains(host: &Permutation, pat: &Permutation) -> bool {
        let n = host.len();
        let k = pat.len();
        if k > n {
            return false;
        }
        // every k-subset via bitmasks
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
            let sub: Vec<u32> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| host.entries[i]).collect();
            Permutation::standardize(&sub) == *pat
        })
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&p("64357218"), &p("231")));
        assert!(!contains(&p("64357218"), &p("132")));
        for host in ["", "1", "64357218"] {
            assert!(contains(&p(host), &Permutation::empty()));
        }
        assert!(contains(&p("2413"), &p("2413")));
    }

    #[test]
    fn basis_examples() {
        let a = Basis::class_a();
        assert!(!avoids_basis(&p("2413"), &a));
        assert!(avoids_basis(&p("321"), &a));
        assert!(Basis::parse(&["12", "123"]).is_err());
    }

    #[test]
    fn containment_matches_subset_scan() {
        let b = Basis::class_b();
        let mut rng_state = 12345u64;
        for _ in 0..60 {
            // Fisher-Yates with a small LCG
            let mut e: Vec<u32> = (1..=10).collect();
            for i in (1..e.len()).rev() {
                rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (rng_state >> 33) as usize % (i + 1);
                e.swap(i, j);
            }
            let host = Permutation::new(e).unwrap();
            let naive = b.patterns().iter().all(|s| !naive_contains(&host, s));
            assert_eq!(avoids_basis(&host, &b), naive, "{host}");
        }
    }

    #[test]
    fn containment_transitive_up_to_six() {
        let perms: Vec<Permutation> = (0..=4).flat_map(Permutation::all).collect();
        let hosts: Vec<Permutation> = Permutation::all(6).step_by(7).collect();
        for a in &hosts {
            for b in perms.iter().filter(|b| contains(a, b)) {
                for c in perms.iter().filter(|c| c.len() <= b.len()) {
                    if contains(b, c) {
                        assert!(contains(a, c), "{a} ⊇ {b} ⊇ {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn sums() {
        assert_eq!(direct_sum(&p("12"), &p("21")), p("1243"));
        assert_eq!(skew_sum(&p("1"), &p("1")), p("21"));
        assert_eq!(direct_sum(&Permutation::empty(), &p("312")), p("312"));
        assert_eq!(skew_sum(&p("312"), &Permutation::empty()), p("312"));
    }

    #[test]
    fn skew_component_examples() {
        assert_eq!(skew_components(&p("321")), vec![p("1"), p("1"), p("1")]);
        assert_eq!(skew_components(&p("2413")), vec![p("2413")]);
        assert!(skew_components(&Permutation::empty()).is_empty());
    }

    #[test]
    fn skew_components_recombine_up_to_eight() {
        for n in 1..=8 {
            for q in Permutation::all(n) {
                let parts = skew_components(&q);
                assert!(parts.iter().all(is_skew_indecomposable_brute));
                let back = parts.iter().fold(Permutation::empty(), |acc, s| skew_sum(&acc, s));
                assert_eq!(back, q);
            }
        }
    }

    fn is_skew_indecomposable_brute(q: &Permutation) -> bool {
        let n = q.len();
        (1..n).all(|k| {
            let head_min = q.entries[..k].iter().min().unwrap();
            let tail_max = q.entries[k..].iter().max().unwrap();
            head_min < tail_max
        })
    }

    #[test]
    fn run_statistics() {
        assert_eq!(initial_decreasing_run(p("64357218").entries()), 3);
        assert_eq!(initial_decreasing_run(p("1").entries()), 1);
        assert_eq!(initial_decreasing_run::<u32>(&[]), 0);
        assert_eq!(trailing_increasing_run(p("14235").entries()), 3);
        assert_eq!(gap_count(p("14235").entries()).unwrap(), 4);
        assert_eq!(trailing_increasing_run(p("54321").entries()), 1);
        assert_eq!(gap_count(p("54321").entries()).unwrap(), 2);
        assert_eq!(trailing_increasing_run(p("1").entries()), 1);
        assert_eq!(gap_count(p("1").entries()).unwrap(), 2);
        assert!(gap_count::<u32>(&[]).is_err());
        assert_eq!(trailing_marks(p("1").entries()), 0);
        assert_eq!(trailing_marks(p("12").entries()), 1);
        assert_eq!(trailing_marks(p("132").entries()), 1);
        assert_eq!(trailing_marks(p("14235").entries()), 3);
        assert_eq!(trailing_marks(p("21").entries()), 0);
        assert_eq!(trailing_marks(p("312").entries()), 1);
    }

    #[test]
    fn runs_are_bounded_by_length() {
        for n in 1..=7 {
            for q in Permutation::all(n) {
                let d = initial_decreasing_run(q.entries());
                let i = trailing_increasing_run(q.entries());
                assert!((1..=n).contains(&d) && (1..=n).contains(&i));
            }
        }
    }

    #[test]
    fn slice_examples() {
        let fig = p("11,14,6,7,10,8,12,2,5,3,9,4,13,1");
        let s = slices(&fig);
        assert_eq!(s.len(), 4);
        assert_eq!(s.slices[0], vec![0, 1, 6, 12]);
        assert_eq!(s.slices[3], vec![13]);
        assert_eq!(slices(&Permutation::identity(6)).len(), 1);
        assert_eq!(slices(&p("1")).len(), 1);
        assert_eq!(slices(&Permutation::empty()).len(), 0);
    }

    #[test]
    fn slices_count_minima_up_to_eight() {
        for n in 0..=8 {
            for q in Permutation::all(n) {
                let direct = (0..n).filter(|&i| q.entries[..i].iter().all(|&e| e > q.entries[i])).count();
                let s = slices(&q);
                assert_eq!(s.len(), direct);
                let mut covered: Vec<usize> = s.slices.concat();
                covered.sort();
                assert_eq!(covered, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(p("2413").to_string(), "2413");
        let long = p("11,14,6,7,10,8,12,2,5,3,9,4,13,1");
        assert_eq!(long.to_string(), "11,14,6,7,10,8,12,2,5,3,9,4,13,1");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("2213".parse::<Permutation>().is_err());
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::all(0).count(), 1);
    }
}
