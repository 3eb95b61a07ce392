//! Posets of regions of central hyperplane arrangements given by one-sided
//! vector configurations: region enumeration by sign-vector feasibility,
//! the simplicial-slice criterion, and the lattice test.

use super::{linalg, lp, qi, scale, Q};
use crate::bits::BitMatrix;
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use num_traits::{Signed, Zero};

/// A finite set of nonzero vectors lying strictly on one side of a
/// hyperplane (so the base region exists).
pub struct VectorConfiguration {
    vectors: Vec<Vec<Q>>,
    dim: usize,
}

impl VectorConfiguration {
    pub fn new(vectors: Vec<Vec<Q>>) -> Result<VectorConfiguration> {
        let Some(first) = vectors.first() else {
            return Err(Error::DegenerateConfiguration("no vectors".into()));
        };
        let dim = first.len();
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DegenerateConfiguration("mixed dimensions".into()));
            }
            if super::is_zero_vec(v) {
                return Err(Error::DegenerateConfiguration("zero vector".into()));
            }
        }
        if lp::strictly_separating(&vectors).is_none() {
            return Err(Error::DegenerateConfiguration(
                "vectors do not lie strictly in a halfspace".into(),
            ));
        }
        Ok(VectorConfiguration { vectors, dim })
    }

    /// The incidence configuration of a dag: `e_u - e_v` per arc. Its
    /// poset of regions is the acyclic reorientation poset.
    pub fn incidence(d: &Dag) -> Result<VectorConfiguration> {
        let vectors = d
            .arcs()
            .iter()
            .map(|&(u, v)| {
                let mut x = super::zeros(d.n());
                x[u] = qi(1);
                x[v] = qi(-1);
                x
            })
            .collect();
        Self::new(vectors)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    /// Feasible strict sign vectors, as bitmasks of the positive side. The
    /// base region is the all-negative mask 0.
    pub fn regions(&self) -> Vec<u32> {
        let m = self.vectors.len();
        (0u32..1 << m)
            .filter(|&mask| {
                let rows: Vec<Vec<Q>> = (0..m)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            self.vectors[i].clone()
                        } else {
                            scale(&self.vectors[i], &qi(-1))
                        }
                    })
                    .collect();
                lp::strictly_separating(&rows).is_some()
            })
            .collect()
    }

    /// The poset of regions from the base region, ordered by inclusion of
    /// positive sign sets, together with the region masks.
    pub fn poset_of_regions(&self) -> (FinitePoset, Vec<u32>) {
        let regions = self.regions();
        let n = regions.len();
        let mut leq = BitMatrix::new(n);
        for (i, &a) in regions.iter().enumerate() {
            for (j, &b) in regions.iter().enumerate() {
                if a & !b == 0 {
                    leq.set(i, j);
                }
            }
        }
        (FinitePoset::from_leq(leq), regions)
    }

    pub fn regions_lattice(&self) -> bool {
        self.poset_of_regions().0.is_lattice()
    }

    /// For every linear hyperplane, the cone generated by the vectors lying
    /// on it must be simplicial (extreme rays linearly independent).
    pub fn check_simplicial_slices(&self) -> bool {
        // candidate slices: closures A n span(S) of subsets S, of rank < dim
        let m = self.vectors.len();
        let mut slices: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..1 << m {
            let subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let rows: Vec<Vec<Q>> = subset.iter().map(|&i| self.vectors[i].clone()).collect();
            if linalg::rank(&rows) >= self.dim {
                continue;
            }
            // close: every vector inside the span joins the slice
            let closed: Vec<usize> = (0..m)
                .filter(|&i| {
                    let mut test = rows.clone();
                    test.push(self.vectors[i].clone());
                    linalg::rank(&test) == linalg::rank(&rows)
                })
                .collect();
            if !slices.contains(&closed) {
                slices.push(closed);
            }
        }
        slices.iter().all(|slice| self.cone_is_simplicial(slice))
    }

    fn cone_is_simplicial(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return true;
        }
        let rows: Vec<Vec<Q>> = members.iter().map(|&i| self.vectors[i].clone()).collect();
        let rank = linalg::rank(&rows);
        // extreme rays: vectors not in the cone of the others (parallel
        // copies folded together)
        let mut extreme_dirs: Vec<Vec<Q>> = Vec::new();
        for (k, v) in rows.iter().enumerate() {
            let others: Vec<Vec<Q>> = rows
                .iter()
                .enumerate()
                .filter(|&(j, w)| j != k && !parallel(v, w))
                .map(|(_, w)| w.clone())
                .collect();
            if !lp::in_cone(&others, v) && !extreme_dirs.iter().any(|w| parallel(v, w)) {
                extreme_dirs.push(v.clone());
            }
        }
        extreme_dirs.len() == rank
    }
}

fn parallel(a: &[Q], b: &[Q]) -> bool {
    let Some(i) = (0..a.len()).find(|&i| !a[i].is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let lambda = &a[i] / &b[i];
    lambda.is_positive() && *a == scale(b, &lambda)
}

/// The 6-vector configuration in dimension 4 adapted from the classical
/// non-lattice example: simplicial slices but no lattice of regions.
pub fn example_rank4() -> VectorConfiguration {
    VectorConfiguration::new(vec![
        super::qvec(&[1, 0, 0, 0]),
        super::qvec(&[0, 1, 0, 0]),
        super::qvec(&[-1, -2, -1, 0]),
        super::qvec(&[2, 1, 1, 0]),
        super::qvec(&[0, 0, 1, -1]),
        super::qvec(&[0, 0, 0, -1]),
    ])
    .expect("one-sided configuration")
}

/// Six roots of the rank-4 hyperoctahedral root system with the same
/// behavior: simplicial slices, not a lattice.
pub fn example_b4() -> VectorConfiguration {
    VectorConfiguration::new(vec![
        super::qvec(&[1, 0, 0, 0]),
        super::qvec(&[0, 1, 0, 0]),
        super::qvec(&[0, 0, 1, 0]),
        super::qvec(&[0, 0, 0, 1]),
        super::qvec(&[1, 1, 1, 0]),
        super::qvec(&[0, 1, 2, 2]),
    ])
    .expect("one-sided configuration")
}
