//! Textbook two-phase simplex on exact rationals with Bland's rule.
//! Instances here are tiny (at most a few dozen rows), so the dense
//! tableau is all we need.

use super::{qi, Q};
use num_traits::{Signed, Zero};

/// A feasible point of `{x >= 0 : A x = b}`, or `None`.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let n = a[0].len();
    // normalize to b >= 0, then add one artificial variable per row
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (row, rhs) in a.iter().zip(b) {
        let flip = rhs.is_negative();
        let mut r: Vec<Q> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.resize(n + m + 1, Q::zero());
        r[n + m] = if flip { -rhs.clone() } else { rhs.clone() };
        tab.push(r);
    }
    for (i, row) in tab.iter_mut().enumerate() {
        row[n + i] = qi(1);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective: minimize the sum of artificials; reduced-cost row starts
    // as -(sum of constraint rows) on structural columns
    let mut obj = vec![Q::zero(); n + m + 1];
    for row in &tab {
        for j in 0..n {
            obj[j] = &obj[j] - &row[j];
        }
        obj[n + m] = &obj[n + m] - &row[n + m];
    }

    loop {
        // Bland: smallest-index column with negative reduced cost
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // ratio test; ties broken by smallest basis variable
        let mut leave: Option<usize> = None;
        let mut best: Option<Q> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][n + m] / &tab[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave?; // unbounded cannot happen in phase 1
        pivot(&mut tab, &mut obj, leave, enter);
        basis[leave] = enter;
    }

    // optimum must be zero for feasibility
    if !obj[n + m].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tab[i][n + m].clone();
        } else if !tab[i][n + m].is_zero() {
            return None; // artificial stuck at a positive level
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Q>], obj: &mut [Q], row: usize, col: usize) {
    let inv = tab[row][col].clone();
    for x in tab[row].iter_mut() {
        *x = &*x / &inv;
    }
    let width = tab[row].len();
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col].clone();
            for j in 0..width {
                let delta = &f * &tab[row][j];
                tab[i][j] = &tab[i][j] - &delta;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for j in 0..width {
            let delta = &f * &tab[row][j];
            obj[j] = &obj[j] - &delta;
        }
    }
}

/// A free-variable point with `row . x >= 1` for every row, or `None`.
/// This decides strict feasibility of the homogeneous system
/// `row . x > 0`.
pub fn strictly_separating(rows: &[Vec<Q>]) -> Option<Vec<Q>> {
    let m = rows.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let n = rows[0].len();
    // x = p - q with p, q >= 0, surplus s: row.p - row.q - s = 1
    let mut a = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(2 * n + m);
        r.extend(row.iter().cloned());
        r.extend(row.iter().map(|x| -x.clone()));
        for k in 0..m {
            r.push(if k == i { qi(-1) } else { Q::zero() });
        }
        a.push(r);
    }
    let b = vec![qi(1); m];
    let sol = feasible_point(&a, &b)?;
    Some((0..n).map(|j| &sol[j] - &sol[n + j]).collect())
}

/// Is `target` a nonnegative combination of the generators?
pub fn in_cone(generators: &[Vec<Q>], target: &[Q]) -> bool {
    if super::is_zero_vec(target) {
        return true;
    }
    if generators.is_empty() {
        return false;
    }
    let n = target.len();
    // columns are generators: sum lambda_i g_i = target, lambda >= 0
    let a: Vec<Vec<Q>> = (0..n)
        .map(|coord| generators.iter().map(|g| g[coord].clone()).collect())
        .collect();
    feasible_point(&a, target).is_some()
}

/// Is `target` a convex combination of the points?
pub fn in_convex_hull(points: &[Vec<Q>], target: &[Q]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = target.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|coord| points.iter().map(|p| p[coord].clone()).collect())
        .collect();
    a.push(vec![qi(1); points.len()]);
    let mut b = target.to_vec();
    b.push(qi(1));
    feasible_point(&a, &b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{dot, qvec};

    #[test]
    fn simple_feasibility() {
        // x + y = 2, x - y = 0 has x = y = 1
        let a = vec![qvec(&[1, 1]), qvec(&[1, -1])];
        let x = feasible_point(&a, &qvec(&[2, 0])).unwrap();
        assert_eq!(x, qvec(&[1, 1]));
        // x + y = -1 with x, y >= 0 is infeasible
        let a2 = vec![qvec(&[1, 1])];
        assert!(feasible_point(&a2, &qvec(&[-1])).is_none());
    }

    #[test]
    fn strict_separation() {
        // {(1,0), (0,1)} admits x with both dots >= 1
        let x = strictly_separating(&[qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        assert!(dot(&x, &qvec(&[1, 0])) >= qi(1));
        // {(1,0), (-1,0)} does not
        assert!(strictly_separating(&[qvec(&[1, 0]), qvec(&[-1, 0])]).is_none());
    }

    #[test]
    fn cone_and_hull_membership() {
        let gens = vec![qvec(&[1, 0]), qvec(&[1, 1])];
        assert!(in_cone(&gens, &qvec(&[3, 1])));
        assert!(!in_cone(&gens, &qvec(&[-1, 0])));
        assert!(in_cone(&gens, &qvec(&[0, 0])));

        let pts = vec![qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[0, 2])];
        assert!(in_convex_hull(&pts, &qvec(&[1, 1])));
        assert!(!in_convex_hull(&pts, &qvec(&[2, 2])));
    }
}
