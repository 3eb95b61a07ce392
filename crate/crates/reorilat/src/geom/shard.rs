//! Shards of the graphical arrangement and shard polytopes of ropes, with
//! the dual V/H construction cross-checked exactly.

use super::polytope::{HRep, VPolytope};
use super::{indicator, qi, unit, zeros, Q};
use crate::bits::{ArcSet, VertexSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::rope::Rope;
use num_bigint::BigInt;
use num_traits::pow::Pow;
use num_traits::Zero;

/// Shard membership: `x_w <= x_u = x_v <= x_w'` for `w` in the down set
/// and `w'` in the up set.
pub fn shard_contains(r: &Rope, x: &[Q]) -> bool {
    x[r.u] == x[r.v] && r.down.iter().all(|w| x[w] <= x[r.u]) && r.up.iter().all(|w| x[r.v] <= x[w])
}

/// Vertices along the directed path from `u` to `v` in the transitive
/// reduction (unique for skeletal dags).
pub fn reduction_path(d: &Dag, u: usize, v: usize) -> Vec<usize> {
    let arc = d.arc_id(u, v).expect("rope arc");
    let support = d.transitive_support(arc);
    let red = d.transitive_reduction();
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        let next = (0..d.n())
            .find(|&w| support.contains(w) && red.arc_id(cur, w).is_some())
            .expect("reduction restricted to the support is a path");
        path.push(next);
        cur = next;
    }
    debug_assert_eq!(path.len(), support.len());
    path
}

/// Alternating matchings of a rope: subsets of `{u} + down` and
/// `up + {v}` strictly interleaving along the reduction path, starting on
/// the down side and ending on the up side.
pub fn alternating_matchings(d: &Dag, r: &Rope) -> Vec<(VertexSet, VertexSet)> {
    let path = reduction_path(d, r.u, r.v);
    let down_side: Vec<usize> = path
        .iter()
        .copied()
        .filter(|&w| w == r.u || r.down.contains(w))
        .collect();
    let up_side: Vec<usize> = path
        .iter()
        .copied()
        .filter(|&w| w == r.v || r.up.contains(w))
        .collect();
    let pos = |w: usize| path.iter().position(|&p| p == w).unwrap();

    let mut out = vec![(VertexSet::EMPTY, VertexSet::EMPTY)];
    // extend a partial matching ending with an up element at `last`
    fn extend(
        down_side: &[usize],
        up_side: &[usize],
        pos: &impl Fn(usize) -> usize,
        last: Option<usize>,
        m_down: VertexSet,
        m_up: VertexSet,
        out: &mut Vec<(VertexSet, VertexSet)>,
    ) {
        for &dw in down_side {
            if last.is_some_and(|l| pos(dw) <= l) {
                continue;
            }
            for &uw in up_side {
                if pos(uw) <= pos(dw) {
                    continue;
                }
                let (nd, nu) = (m_down.with(dw), m_up.with(uw));
                out.push((nd, nu));
                extend(down_side, up_side, pos, Some(pos(uw)), nd, nu, out);
            }
        }
    }
    extend(
        &down_side,
        &up_side,
        &pos,
        None,
        VertexSet::EMPTY,
        VertexSet::EMPTY,
        &mut out,
    );
    out
}

/// A shard polytope with both exact representations.
pub struct ShardPolytope {
    pub vpoly: VPolytope,
    pub hrep: HRep,
}

/// Builds the shard polytope of a rope from its alternating matchings and
/// from its fall/rise inequality system, and verifies that the two
/// representations agree.
pub fn shard_polytope(d: &Dag, r: &Rope) -> Result<ShardPolytope> {
    if !d.is_skeletal() {
        return Err(Error::NotSkeletal);
    }
    let arc = d.arc_id(r.u, r.v).ok_or(Error::ArcNotInGraph(r.u, r.v))?;
    let interior = d.arc_interior(arc);
    if r.down.union(r.up) != interior || !r.down.intersection(r.up).is_empty() {
        return Err(Error::InvalidInput(format!("not a rope: {r:?}")));
    }

    let n = d.n();
    let vertices: Vec<Vec<Q>> = alternating_matchings(d, r)
        .into_iter()
        .map(|(m_down, m_up)| {
            let mut x = zeros(n);
            for w in m_down.iter() {
                x[w] = qi(1);
            }
            for w in m_up.iter() {
                x[w] = qi(-1);
            }
            x
        })
        .collect();
    let vpoly = VPolytope::from_points(vertices);

    // inequality system over the reduction path
    let path = reduction_path(d, r.u, r.v);
    let support = r.support();
    let mut equalities = Vec::new();
    for w in 0..n {
        if !support.contains(w) {
            equalities.push((unit(n, w), Q::zero()));
        }
    }
    equalities.push((indicator(n, support), Q::zero()));
    let mut inequalities = Vec::new();
    for w in r.down.iter() {
        inequalities.push((unit(n, w), Q::zero()));
    }
    for w in r.up.iter() {
        let mut neg = zeros(n);
        neg[w] = qi(-1);
        inequalities.push((neg, Q::zero()));
    }
    let down_closed = r.down.with(r.u);
    let up_closed = r.up.with(r.v);
    for k in 0..path.len() - 1 {
        let (w, w2) = (path[k], path[k + 1]);
        let prefix = VertexSet::from_iter(path[..=k].iter().copied());
        if down_closed.contains(w) && up_closed.contains(w2) {
            // fall: prefix sum at most 1
            let mut neg = zeros(n);
            for z in prefix.iter() {
                neg[z] = qi(-1);
            }
            inequalities.push((neg, qi(-1)));
        }
        if r.up.with(r.u).contains(w) && r.down.with(r.v).contains(w2) {
            // rise: prefix sum at least 0
            inequalities.push((indicator(n, prefix), Q::zero()));
        }
    }
    let hrep = HRep {
        equalities,
        inequalities,
    };
    hrep.verify_against(&vpoly)?;
    Ok(ShardPolytope { vpoly, hrep })
}

/// An exact interior point of the wall crossed by flipping `arc` in the
/// reorientation `reversed`: ranks of the arc-contracted orientation spread
/// as powers of five, so the two endpoints tie and nothing else does.
pub fn wall_point(d: &Dag, reversed: ArcSet, arc: usize) -> Vec<Q> {
    let (u, v) = d.arc(arc);
    let n = d.n();
    // contract v into u
    let merged = |w: usize| if w == v { u } else { w };
    let mut out = vec![VertexSet::EMPTY; n];
    for id in 0..d.arc_count() {
        if id == arc {
            continue;
        }
        let (t, h) = d.oriented_arc(id, reversed);
        let (t, h) = (merged(t), merged(h));
        if t != h {
            out[t].insert(h);
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&w| w != v).collect();
    let mut indeg = vec![0usize; n];
    for &w in &nodes {
        for z in out[w].iter() {
            indeg[z] += 1;
        }
    }
    let mut removed = vec![false; n];
    let mut rank = vec![0usize; n];
    for rk in 0..nodes.len() {
        let w = nodes
            .iter()
            .copied()
            .find(|&w| !removed[w] && indeg[w] == 0)
            .expect("contraction of a reduction arc is acyclic");
        removed[w] = true;
        rank[w] = rk;
        for z in out[w].iter() {
            indeg[z] -= 1;
        }
    }
    rank[v] = rank[u];
    rank.into_iter()
        .map(|r| Q::from_integer(BigInt::from(5).pow(r as u32)))
        .collect()
}
