//! Exact linear algebra over the integers and rationals.
//!
//! Forward elimination is fraction-free (Bareiss): after `k` pivot steps every
//! live entry is a `(k+1)`-minor of the input, so the division by the previous
//! pivot is exact and entries stay integral. Pivots are chosen as the first
//! nonzero entry at or below the current row, which makes the elimination
//! order deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Reduces `rows` in place to row echelon form, pivoting only in columns
/// `0..pivot_cols` (columns past that are carried along, e.g. right-hand
/// sides). Returns the pivot column of each leading row.
fn bareiss(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..row.len() {
                let mut val = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    val -= &factor * &pivot_row[j];
                }
                if !prev.is_one() {
                    let (quo, rem) = val.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "inexact Bareiss division");
                    val = quo;
                }
                row[j] = val;
            }
        }
        prev = head[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix given as rows.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut work = rows.to_vec();
    let cols = work[0].len();
    bareiss(&mut work, cols).len()
}

/// Rank of a small-integer matrix.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(&to_big(rows))
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Solves the square system `a x = b` exactly.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<Vec<BigRational>> {
    let mut sols = solve_many(a, std::slice::from_ref(&b.to_vec()))?;
    Ok(sols.pop().unwrap())
}

/// Solves `a x = b` for every `b` in `rhs`, sharing one elimination.
pub fn solve_many(a: &[Vec<BigInt>], rhs: &[Vec<BigInt>]) -> Result<Vec<Vec<BigRational>>> {
    let n = a.len();
    for row in a {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    for b in rhs {
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
    }
    let k = rhs.len();
    let mut work: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(rhs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    let pivots = bareiss(&mut work, n);
    if pivots.len() < n {
        return Err(Error::Singular {
            rank: pivots.len(),
            dim: n,
        });
    }
    // Upper triangular with nonzero diagonal: back-substitute in Q.
    let mut out = Vec::with_capacity(k);
    for col in 0..k {
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(work[i][n + col].clone());
            for j in i + 1..n {
                if !work[i][j].is_zero() {
                    acc -= &x[j] * BigRational::from_integer(work[i][j].clone());
                }
            }
            x[i] = acc / BigRational::from_integer(work[i][i].clone());
        }
        out.push(x);
    }
    Ok(out)
}
