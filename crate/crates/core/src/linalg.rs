//! Exact integer linear algebra on small dense matrices.
//!
//! All routines use fraction-free (Bareiss) elimination over `BigInt`, so
//! determinant signs and ranks are exact regardless of entry size.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::sign_vector::Sign;

/// Row-major integer matrix.
pub type Matrix = Vec<Vec<BigInt>>;

pub fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Bareiss elimination in place. Returns the rank and, for square
/// full-rank input, the determinant in the last pivot (with sign fixed up
/// for row swaps).
fn bareiss(m: &mut Matrix) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut negate = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            negate = !negate;
        }
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols {
        if negate {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

pub fn rank(m: &Matrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut work = m.clone();
    bareiss(&mut work).0
}

pub fn det(m: &Matrix) -> BigInt {
    assert!(m.iter().all(|r| r.len() == m.len()), "det of non-square matrix");
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut work = m.clone();
    bareiss(&mut work).1
}

pub fn det_sign(m: &Matrix) -> Sign {
    Sign::of(&det(m))
}

/// Rank of the set of row vectors `rows[i]` for `i` in `subset`.
pub fn subset_rank(rows: &Matrix, subset: impl IntoIterator<Item = usize>) -> usize {
    let m: Matrix = subset.into_iter().map(|i| rows[i].clone()).collect();
    rank(&m)
}

/// Greedily picks coordinates (columns) whose restriction keeps the row
/// rank of `rows`. Projecting onto them is injective on the row span.
pub fn independent_columns(rows: &Matrix) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let total = rank(rows);
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..cols {
        if chosen.len() == total {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(c);
        let m: Matrix = rows.iter().map(|r| trial.iter().map(|&k| r[k].clone()).collect()).collect();
        if rank(&m) == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

/// For an `r x (r-1)` matrix `cols` (given column-wise as `r-1` vectors of
/// length `r`), returns `w` with `w . x = det[cols | x]` for every `x`.
pub fn cofactor_normal(columns: &[&[BigInt]]) -> Vec<BigInt> {
    let r = columns.len() + 1;
    (0..r)
        .map(|k| {
            let minor: Matrix = (0..r)
                .filter(|&i| i != k)
                .map(|i| columns.iter().map(|col| col[i].clone()).collect())
                .collect();
            let d = det(&minor);
            if (k + r - 1).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Signs of a nonzero kernel vector of the `k x (k+1)` system whose
/// columns are `columns` (each of length `k`), assuming the columns have
/// rank `k`. Cramer's rule: `lambda_i = (-1)^i det(columns without i)`.
pub fn kernel_signs(columns: &[Vec<BigInt>]) -> Vec<Sign> {
    let k = columns.len() - 1;
    (0..=k)
        .map(|skip| {
            let m: Matrix = (0..k)
                .map(|row| {
                    columns
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, col)| col[row].clone())
                        .collect()
                })
                .collect();
            let d = det(&m);
            let s = if skip % 2 == 0 { d } else { -d };
            if s.is_positive() {
                Sign::Plus
            } else if s.is_negative() {
                Sign::Minus
            } else {
                Sign::Zero
            }
        })
        .collect()
}
