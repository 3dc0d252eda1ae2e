mod common;

use common::*;
use num_bigint::BigUint;
use permclass::oracle::{self, distribution_to_csv, Oracle};
use permclass::{Basis, Error, Permutation, Statistic};

#[test]
fn small_counts() {
    for b in [Basis::class_a(), Basis::class_b()] {
        let r = Oracle::default().enumerate_avoiders(&b, 4).unwrap();
        assert_eq!(r.counts, [1u64, 1, 2, 6, 22].map(nat));
    }
}

#[test]
fn agrees_with_exhaustive_filter() {
    for b in [Basis::class_a(), Basis::class_b()] {
        let r = Oracle::default().enumerate_avoiders(&b, 8).unwrap();
        assert_eq!(r.counts, oracle::filter_all_counts(&b, 8), "{b:?}");
    }
}

#[test]
fn first_divergence_at_length_five() {
    let a = Oracle::default().enumerate_avoiders(&Basis::class_a(), 5).unwrap();
    let b = Oracle::default().enumerate_avoiders(&Basis::class_b(), 5).unwrap();
    assert_eq!(a.counts[5], nat(90));
    assert_eq!(b.counts[5], nat(89));
}

#[test]
fn reproduces_golden_counts() {
    let o = Oracle::default();
    let a = o.enumerate_avoiders(&Basis::class_a(), 11).unwrap();
    let b = o.enumerate_avoiders(&Basis::class_b(), 11).unwrap();
    assert_eq!(a.counts_tsv(), CLASS_A_COUNTS);
    assert_eq!(b.counts_tsv(), CLASS_B_COUNTS);
}

#[test]
fn reproduces_golden_distributions() {
    let o = Oracle::default();
    let a = o.statistic_distribution(&Basis::class_a(), 10, &[Statistic::InitialDecreasingRun]).unwrap();
    assert_eq!(a.distribution_csv(Statistic::InitialDecreasingRun).unwrap(), CLASS_A_IDR);
    let b = o
        .statistic_distribution(&Basis::class_b(), 10, &[Statistic::TrailingMarks, Statistic::TrailingIncreasingRun])
        .unwrap();
    assert_eq!(b.distribution_csv(Statistic::TrailingMarks).unwrap(), CLASS_B_MARKS);
    assert_eq!(b.distribution_csv(Statistic::TrailingIncreasingRun).unwrap(), CLASS_B_RUN);
    let s = o.single_slice_distribution(&Basis::class_b(), 10, Statistic::TrailingMarks).unwrap();
    assert_eq!(s.distribution_csv(Statistic::TrailingMarks).unwrap(), CLASS_B_SINGLE_SLICE);
}

#[test]
fn distribution_rows_sum_to_counts() {
    let r = Oracle::default().statistic_distribution(&Basis::class_b(), 9, &Statistic::ALL).unwrap();
    for stat in Statistic::ALL {
        let m = r.distribution(stat).unwrap();
        for (n, row) in m.iter().enumerate() {
            assert_eq!(row.len(), n + 2);
            assert_eq!(row.iter().sum::<BigUint>(), r.counts[n], "{stat} at n={n}");
        }
    }
}

#[test]
fn length_three_by_hand() {
    // class A contains all six permutations of length 3
    let r = Oracle::default().statistic_distribution(&Basis::class_a(), 3, &[Statistic::InitialDecreasingRun]).unwrap();
    let m = r.distribution(Statistic::InitialDecreasingRun).unwrap();
    // 123 132 231 → 1 ; 213 312 → 2 ; 321 → 3
    assert_eq!(m[3], [0u64, 3, 2, 1, 0].map(nat));

    let r = Oracle::default()
        .statistic_distribution(&Basis::class_b(), 3, &[Statistic::TrailingIncreasingRun, Statistic::GapCount])
        .unwrap();
    // 132 213 321 → 1 ; 231 312 → 2 ; 123 → 3
    assert_eq!(r.distribution(Statistic::TrailingIncreasingRun).unwrap()[3], [0u64, 3, 2, 1, 0].map(nat));
    assert_eq!(r.distribution(Statistic::GapCount).unwrap()[3], [0u64, 0, 3, 2, 1].map(nat));
}

#[test]
fn single_slice_edge_cases() {
    let r = Oracle::default().single_slice_distribution(&Basis::class_b(), 2, Statistic::TrailingMarks).unwrap();
    assert_eq!(r.counts, [0u64, 1, 1].map(nat));
    let m = r.distribution(Statistic::TrailingMarks).unwrap();
    assert_eq!(m[1], [1u64, 0, 0].map(nat));
    assert_eq!(m[2], [0u64, 1, 0, 0].map(nat));
}

#[test]
fn exhaustive_single_slice_matches_filter() {
    let b = Basis::class_b();
    let r = Oracle::default().single_slice_distribution(&b, 7, Statistic::TrailingMarks).unwrap();
    for n in 1..=7 {
        let direct = Permutation::all(n).filter(|p| p.avoids(&b) && p.entries()[0] == 1).count();
        assert_eq!(r.counts[n], nat(direct as u64));
    }
}

#[test]
fn budget_exhaustion() {
    let err = Oracle::with_budget(1_000).enumerate_avoiders(&Basis::class_a(), 11).unwrap_err();
    assert!(matches!(err, Error::BudgetExceeded { budget: 1_000, .. }));
}

#[test]
fn length_cap() {
    assert!(matches!(Oracle::default().enumerate_avoiders(&Basis::class_a(), 31), Err(Error::InvalidArgument(_))));
}

#[test]
fn golden_csv_round_trip() {
    let m = distribution(CLASS_A_IDR);
    assert_eq!(distribution_to_csv(&m), CLASS_A_IDR);
    assert_eq!(counts(CLASS_B_COUNTS)[11], nat(853_410));
}

#[test]
fn deterministic_across_thread_counts() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            Oracle::default().statistic_distribution(&Basis::class_b(), 9, &[Statistic::TrailingMarks]).unwrap()
        })
    };
    assert_eq!(run(1), run(4));
}
