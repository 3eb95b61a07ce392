//! Exact Gaussian elimination: rank, unique solutions, kernel vectors.

use super::Q;
use num_traits::Zero;

/// Row echelon reduction in place; returns the pivot columns.
fn echelon(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let delta = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut work: Vec<Vec<Q>> = rows.to_vec();
    echelon(&mut work).len()
}

/// The unique solution of `A x = b`, or `None` when the system is
/// inconsistent or underdetermined.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    if m == 0 {
        return None;
    }
    let n = a[0].len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    // inconsistent: pivot in the augmented column
    if pivots.contains(&n) {
        return None;
    }
    if pivots.len() != n {
        return None;
    }
    let mut x = super::zeros(n);
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Some(x)
}

/// A nonzero vector in the kernel of the row space, or `None` when the
/// rows have full column rank.
pub fn null_vector(rows: &[Vec<Q>]) -> Option<Vec<Q>> {
    if rows.is_empty() {
        return None;
    }
    let n = rows[0].len();
    let mut work: Vec<Vec<Q>> = rows.to_vec();
    let pivots = echelon(&mut work);
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut x = super::zeros(n);
    x[free] = super::qi(1);
    for (row, &c) in work.iter().zip(&pivots) {
        x[c] = -row[free].clone();
    }
    Some(x)
}

/// Dimension of the affine hull of a point set (-1 for the empty set).
pub fn affine_dim(points: &[Vec<Q>]) -> isize {
    match points.split_first() {
        None => -1,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<Q>> = rest.iter().map(|p| super::sub(p, p0)).collect();
            rank(&diffs) as isize
        }
    }
}
