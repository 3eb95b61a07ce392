//! Vertex-described and inequality-described polytopes, with the exact
//! cross-conversion used to verify dual representations.

use super::{dot, linalg, lp, Q};
use crate::error::{Error, Result};

/// A polytope given by its exact vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    vertices: Vec<Vec<Q>>,
}

impl VPolytope {
    /// Deduplicates the points and drops the ones in the convex hull of the
    /// others, so the stored list is exactly the vertex set.
    pub fn from_points(points: Vec<Vec<Q>>) -> VPolytope {
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let vertices: Vec<Vec<Q>> = pts
            .iter()
            .filter(|p| {
                let others: Vec<Vec<Q>> = pts.iter().filter(|q| q != p).cloned().collect();
                !lp::in_convex_hull(&others, p)
            })
            .cloned()
            .collect();
        VPolytope { vertices }
    }

    /// Wraps points already known to be vertices (sorted, deduplicated).
    pub fn from_vertices_unchecked(mut vertices: Vec<Vec<Q>>) -> VPolytope {
        vertices.sort();
        vertices.dedup();
        VPolytope { vertices }
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        linalg::affine_dim(&self.vertices)
    }

    /// Maximum of `dir` and the set of maximizing vertex indices.
    pub fn support(&self, dir: &[Q]) -> (Q, Vec<usize>) {
        assert!(!self.vertices.is_empty());
        let values: Vec<Q> = self.vertices.iter().map(|v| dot(v, dir)).collect();
        let max = values.iter().max().unwrap().clone();
        let argmax = (0..values.len()).filter(|&i| values[i] == max).collect();
        (max, argmax)
    }

    pub fn translate(&self, t: &[Q]) -> VPolytope {
        VPolytope {
            vertices: self.vertices.iter().map(|v| super::add(v, t)).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> VPolytope {
        VPolytope {
            vertices: self.vertices.iter().map(|v| super::scale(v, s)).collect(),
        }
    }
}

/// Equalities `normal . x = rhs` and inequalities `normal . x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equalities: Vec<(Vec<Q>, Q)>,
    pub inequalities: Vec<(Vec<Q>, Q)>,
}

impl HRep {
    pub fn contains(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|(n, c)| dot(n, x) == *c)
            && self.inequalities.iter().all(|(n, c)| dot(n, x) >= *c)
    }

    pub fn ambient_dim(&self) -> usize {
        self.equalities
            .first()
            .or(self.inequalities.first())
            .map_or(0, |(n, _)| n.len())
    }

    /// Exact vertex enumeration: solve every maximal-rank subsystem of
    /// tight constraints and keep the feasible unique solutions. Fine for
    /// the small systems in this crate.
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        let n = self.ambient_dim();
        let eq_rows: Vec<Vec<Q>> = self.equalities.iter().map(|(r, _)| r.clone()).collect();
        let eq_rank = linalg::rank(&eq_rows);
        let need = n - eq_rank;
        let m = self.inequalities.len();
        let mut found: Vec<Vec<Q>> = Vec::new();
        let mut choose = vec![0usize; need];
        enumerate_subsets(m, need, &mut choose, 0, 0, &mut |subset| {
            let mut a = eq_rows.clone();
            let mut b: Vec<Q> = self.equalities.iter().map(|(_, c)| c.clone()).collect();
            for &i in subset {
                a.push(self.inequalities[i].0.clone());
                b.push(self.inequalities[i].1.clone());
            }
            if let Some(x) = linalg::solve_unique(&a, &b) {
                if self.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
        });
        found.sort();
        found
    }

    /// Checks that this representation describes exactly the given
    /// polytope.
    pub fn verify_against(&self, v: &VPolytope) -> Result<()> {
        for vertex in v.vertices() {
            if !self.contains(vertex) {
                return Err(Error::RepresentationMismatch(format!(
                    "vertex {vertex:?} violates the inequality system"
                )));
            }
        }
        let mine = self.vertices();
        let mut theirs: Vec<Vec<Q>> = v.vertices().to_vec();
        theirs.sort();
        if mine != theirs {
            return Err(Error::RepresentationMismatch(format!(
                "H-rep has {} vertices, V-rep has {}",
                mine.len(),
                theirs.len()
            )));
        }
        Ok(())
    }
}

fn enumerate_subsets(
    m: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(&buf[..k]);
        return;
    }
    for i in start..m {
        buf[depth] = i;
        enumerate_subsets(m, k, buf, depth + 1, i + 1, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{qi, qvec};

    #[test]
    fn from_points_filters_non_extreme() {
        let p = VPolytope::from_points(vec![
            qvec(&[0, 0]),
            qvec(&[2, 0]),
            qvec(&[0, 2]),
            qvec(&[1, 1]), // midpoint of an edge
            qvec(&[0, 0]), // duplicate
        ]);
        assert_eq!(p.len(), 3);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn square_hrep_vertices() {
        let h = HRep {
            equalities: vec![],
            inequalities: vec![
                (qvec(&[1, 0]), qi(0)),
                (qvec(&[-1, 0]), qi(-1)),
                (qvec(&[0, 1]), qi(0)),
                (qvec(&[0, -1]), qi(-1)),
            ],
        };
        let vs = h.vertices();
        assert_eq!(vs.len(), 4);
        let v = VPolytope::from_points(vs.clone());
        assert!(h.verify_against(&v).is_ok());
    }

    #[test]
    fn triangle_in_a_plane() {
        // simplex face: x + y + z = 1, coordinates nonnegative
        let h = HRep {
            equalities: vec![(qvec(&[1, 1, 1]), qi(1))],
            inequalities: vec![
                (qvec(&[1, 0, 0]), qi(0)),
                (qvec(&[0, 1, 0]), qi(0)),
                (qvec(&[0, 0, 1]), qi(0)),
            ],
        };
        assert_eq!(h.vertices().len(), 3);
    }

    #[test]
    fn support_function() {
        let p = VPolytope::from_points(vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]);
        let (max, argmax) = p.support(&qvec(&[2, 1]));
        assert_eq!(max, qi(2));
        assert_eq!(argmax.len(), 1);
        // tie along an edge
        let (_, argmax) = p.support(&qvec(&[1, 1]));
        assert_eq!(argmax.len(), 2);
    }
}
