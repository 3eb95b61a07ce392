//! The graphical zonotope and graphical fan: vertices, facets, chambers,
//! rays, and exact interior points of chambers.

use super::polytope::{HRep, VPolytope};
use super::{indicator, qi, scale, sub, unit, Q};
use crate::bits::{ArcSet, VertexSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::reorient::{bfs_lex_ranks, ArLattice};
use num_traits::pow::Pow;

/// The zonotope vertex of a reorientation: the sum of head indicators.
pub fn zonotope_vertex(d: &Dag, reversed: ArcSet) -> Vec<Q> {
    let mut v = super::zeros(d.n());
    for id in 0..d.arc_count() {
        let (_, h) = d.oriented_arc(id, reversed);
        v[h] += qi(1);
    }
    v
}

/// All zonotope vertices; distinct reorientations give distinct vertices.
pub fn graphical_zonotope(d: &Dag, ar: &ArLattice) -> VPolytope {
    let points: Vec<Vec<Q>> = (0..ar.len())
        .map(|i| zonotope_vertex(d, ar.reversed(i)))
        .collect();
    let poly = VPolytope::from_points(points);
    debug_assert_eq!(poly.len(), ar.len());
    poly
}

/// Facet description: one equality per connected component (coordinates sum
/// to the number of internal arcs) and one inequality per biconnected
/// subset.
pub fn zonotope_facets(d: &Dag) -> HRep {
    let arcs_inside = |s: VertexSet| {
        qi(d.arcs()
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .count() as i64)
    };
    let equalities = d
        .undirected_components()
        .into_iter()
        .map(|k| (indicator(d.n(), k), arcs_inside(k)))
        .collect();
    let inequalities = d
        .biconnected_subsets()
        .into_iter()
        .map(|u| (indicator(d.n(), u), arcs_inside(u)))
        .collect();
    HRep {
        equalities,
        inequalities,
    }
}

/// Closed chamber membership: the point increases weakly along every arc.
pub fn chamber_contains(d: &Dag, reversed: ArcSet, x: &[Q]) -> bool {
    (0..d.arc_count()).all(|id| {
        let (t, h) = d.oriented_arc(id, reversed);
        x[t] <= x[h]
    })
}

/// The unique open chamber containing a point with no ties across arcs.
pub fn chamber_of(d: &Dag, x: &[Q]) -> Result<ArcSet> {
    let mut reversed = ArcSet::EMPTY;
    for id in 0..d.arc_count() {
        let (u, v) = d.arc(id);
        match x[u].cmp(&x[v]) {
            std::cmp::Ordering::Equal => return Err(Error::OnWall { u, v }),
            std::cmp::Ordering::Greater => reversed.insert(id),
            std::cmp::Ordering::Less => {}
        }
    }
    debug_assert!(d.is_acyclic_reorientation(reversed));
    Ok(reversed)
}

/// Ray of the graphical fan attached to a biconnected subset.
pub fn ray_vector(d: &Dag, u: VertexSet) -> Vec<Q> {
    let comp = d
        .undirected_components()
        .into_iter()
        .find(|c| u.is_subset(*c))
        .expect("subset lies in a component");
    let bar = comp.difference(u);
    let a = scale(&indicator(d.n(), bar), &qi(u.len() as i64));
    let b = scale(&indicator(d.n(), u), &qi(bar.len() as i64));
    sub(&a, &b)
}

/// Deterministic interior point of the chamber of a reorientation:
/// coordinates `5^rank` along the BFS-lexicographic linear extension.
/// Exponential spacing makes the point generic for every summand whose
/// vertices have coordinates in `{-1, 0, 1}` (signed digit sums in base 5
/// with digits bounded by 2 cannot vanish), which covers arc segments,
/// simplex faces, and shard polytopes.
pub fn interior_point(d: &Dag, reversed: ArcSet) -> Vec<Q> {
    bfs_lex_ranks(d, reversed)
        .into_iter()
        .map(|r| Q::from_integer(num_bigint::BigInt::from(5).pow(r as u32)))
        .collect()
}

/// Direction `sum of e_head - e_tail` of the reference orientation.
pub fn omega_direction(d: &Dag) -> Vec<Q> {
    let mut w = super::zeros(d.n());
    for &(u, v) in d.arcs() {
        w[v] += qi(1);
        w[u] -= qi(1);
    }
    w
}

/// The arc segment `[e_tail, e_head]` of an arc, as a polytope.
pub fn arc_segment(d: &Dag, id: usize) -> VPolytope {
    let (u, v) = d.arc(id);
    VPolytope::from_vertices_unchecked(vec![unit(d.n(), u), unit(d.n(), v)])
}

/// Whether the graphical fan is simplicial, by the per-chamber criterion:
/// every acyclic reorientation must have a forest as transitive reduction.
/// Coincides with chordfulness of the underlying graph.
pub fn is_fan_simplicial(d: &Dag, ar: &ArLattice) -> bool {
    (0..ar.len()).all(|e| {
        let mut parent: Vec<usize> = (0..d.n()).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for id in ar.reduction_arcs(e).iter() {
            let (u, v) = d.arc(id);
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    })
}

/// As [`is_fan_simplicial`], enumerating the reorientations internally.
pub fn fan_is_simplicial(d: &Dag) -> crate::error::Result<bool> {
    Ok(is_fan_simplicial(d, &ArLattice::new(d)?))
}
