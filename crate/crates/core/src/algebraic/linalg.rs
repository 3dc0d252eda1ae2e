//! Exact integer linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer basis of the right nullspace of `rows` (each of equal length).
///
/// Fraction-free Gauss–Jordan elimination; the pivot in each column is the
/// first eligible row, and every row is divided by its content after each
/// update, so the result does not depend on scheduling. Each basis vector
/// is primitive with a positive last nonzero entry.
pub fn nullspace(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    m.iter_mut().for_each(|r| make_primitive(r));
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let prow = m[rank].clone();
        let pv = prow[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let a = &pv / &g;
            let b = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = &*x * &a - y * &b;
            }
            make_primitive(row);
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let l = pivots.iter().enumerate().fold(BigInt::one(), |l, (r, &pc)| l.lcm(&m[r][pc]));
        let mut v = vec![BigInt::zero(); ncols];
        v[fc] = l.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            if !m[r][fc].is_zero() {
                v[pc] = -(&m[r][fc] * &l) / &m[r][pc];
            }
        }
        make_primitive(&mut v);
        if v.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        basis.push(v);
    }
    basis
}
