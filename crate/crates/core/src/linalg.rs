//! Dense exact linear algebra over a [`Field`], used by the recursion and
//! cofactor solvers. Gaussian elimination with first-nonzero pivoting; no
//! numeric concerns since the arithmetic is exact.

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("singular system: no solution")]
    NoSolution,
    #[error("singular system: solution not unique")]
    NonUnique,
}

/// Solve `A x = b` for square `A`. Errors when `A` is singular.
pub fn solve_square<F: Field>(a: &[Vec<F>], b: &[F]) -> Result<Vec<F>, SolveError> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let cols = n + 1;
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(SolveError::NonUnique)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].inv().expect("nonzero pivot");
        for c in col..cols {
            rows[col][c] = rows[col][c].mul(&inv);
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let delta = factor.mul(&rows[col][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
    }
    Ok(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// Solve a possibly rectangular system `A x = b` requiring a unique solution:
/// every variable must be pinned and every equation satisfied.
pub fn solve_unique<F: Field>(a: &[Vec<F>], b: &[F], nvars: usize) -> Result<Vec<F>, SolveError> {
    let m = a.len();
    debug_assert!(a.iter().all(|row| row.len() == nvars) && b.len() == m);
    let mut rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; nvars];
    let mut rank = 0;
    for col in 0..nvars {
        let Some(pivot) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in col..=nvars {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..m {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=nvars {
                    let delta = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // Remaining rows must be 0 = 0.
    for r in rank..m {
        if !rows[r][nvars].is_zero() {
            return Err(SolveError::NoSolution);
        }
    }
    if pivot_of_col.contains(&usize::MAX) {
        return Err(SolveError::NonUnique);
    }
    Ok((0..nvars).map(|c| rows[pivot_of_col[c]][nvars].clone()).collect())
}
