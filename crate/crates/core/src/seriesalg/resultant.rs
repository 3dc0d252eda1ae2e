use crate::error::{Error, Result};

use super::MPoly;

/// Sylvester resultant of `p` and `q` with respect to `var`, computed as a
/// fraction-free (Bareiss) determinant over the polynomial ring in the
/// remaining indeterminates.
///
/// With `p = a·Π(var − αᵢ)` of degree `m` this equals `a^n·Π q(αᵢ)`, where
/// `n` is the degree of `q`.
pub fn resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly> {
    let m = positive_degree(p, var)?;
    let n = positive_degree(q, var)?;
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in pc.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in qc.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn positive_degree(p: &MPoly, var: &str) -> Result<usize> {
    match p.degree_in(var) {
        Some(d) if d > 0 => Ok(d as usize),
        _ => Err(Error::DegreeZero(var.to_string())),
    }
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_det(mut mat: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let size = mat.len();
    if size == 0 {
        return Ok(MPoly::one());
    }
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..size {
        // Pivot: first nonzero entry with the fewest terms, for smaller
        // intermediate products.
        let pivot = (k..size).filter(|&i| !mat[i][k].is_zero()).min_by_key(|&i| (mat[i][k].num_terms(), i));
        let Some(pivot) = pivot else {
            return Ok(MPoly::zero());
        };
        if pivot != k {
            mat.swap(pivot, k);
            negate = !negate;
        }
        if k + 1 == size {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] =
                    num.div_exact(&prev).ok_or_else(|| Error::Consistency("Bareiss step left a remainder".into()))?;
            }
            mat[i][k] = MPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if negate { -&det } else { det })
}
