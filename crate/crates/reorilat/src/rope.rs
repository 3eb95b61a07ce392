//! Ropes: the combinatorial model for join and meet irreducibles of the
//! acyclic reorientation lattice of a skeletal dag, with crossing,
//! non-crossing rope diagrams, bidiagrams, and the subrope order.

use crate::bits::{ArcSet, BitMatrix, VertexSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::reorient::{join_unchecked, ArLattice};
use std::collections::HashMap;

/// A rope `(u, v, down, up)`: an arc of the dag together with a partition
/// of its interior into a down set and an up set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rope {
    pub u: usize,
    pub v: usize,
    pub down: VertexSet,
    pub up: VertexSet,
}

impl Rope {
    /// Closed support `{u, v} + down + up`.
    pub fn support(&self) -> VertexSet {
        self.down
            .union(self.up)
            .union(VertexSet::from_iter([self.u, self.v]))
    }
}

/// Down set of an arc in a reorientation: interior vertices whose incoming
/// half is reversed and outgoing half is not.
pub fn arc_down_set(d: &Dag, e: ArcSet, arc: usize) -> VertexSet {
    let (u, v) = d.arc(arc);
    let mut out = VertexSet::EMPTY;
    for w in d.arc_interior(arc).iter() {
        let uw = d.arc_id(u, w).expect("interior vertex");
        let wv = d.arc_id(w, v).expect("interior vertex");
        if e.contains(uw) && !e.contains(wv) {
            out.insert(w);
        }
    }
    out
}

pub fn arc_up_set(d: &Dag, e: ArcSet, arc: usize) -> VertexSet {
    let (u, v) = d.arc(arc);
    let mut out = VertexSet::EMPTY;
    for w in d.arc_interior(arc).iter() {
        let uw = d.arc_id(u, w).expect("interior vertex");
        let wv = d.arc_id(w, v).expect("interior vertex");
        if !e.contains(uw) && e.contains(wv) {
            out.insert(w);
        }
    }
    out
}

/// The rope read off an arc of a reorientation. A genuine rope (the down
/// and up sets partition the interior) whenever the arc lies in the
/// transitive reduction of the reorientation, in either direction.
pub fn rope_at_arc(d: &Dag, e: ArcSet, arc: usize) -> Rope {
    let (u, v) = d.arc(arc);
    Rope {
        u,
        v,
        down: arc_down_set(d, e, arc),
        up: arc_up_set(d, e, arc),
    }
}

/// Join irreducible of a rope: reverse the arcs from `up + {u}` to
/// `down + {v}`.
pub fn join_irreducible_of_rope(d: &Dag, r: &Rope) -> ArcSet {
    let tails = r.up.with(r.u);
    let heads = r.down.with(r.v);
    let mut rev = ArcSet::EMPTY;
    for id in 0..d.arc_count() {
        let (w, w2) = d.arc(id);
        if tails.contains(w) && heads.contains(w2) {
            rev.insert(id);
        }
    }
    rev
}

/// Meet irreducible of a rope: leave unreversed exactly the arcs from
/// `down + {u}` to `up + {v}`.
pub fn meet_irreducible_of_rope(d: &Dag, r: &Rope) -> ArcSet {
    let tails = r.down.with(r.u);
    let heads = r.up.with(r.v);
    let mut rev = ArcSet::EMPTY;
    for id in 0..d.arc_count() {
        let (w, w2) = d.arc(id);
        if !(tails.contains(w) && heads.contains(w2)) {
            rev.insert(id);
        }
    }
    rev
}

/// Rope of a join irreducible: read off the unique reversed arc of its
/// transitive reduction.
pub fn rope_of_join_irreducible(ar: &ArLattice, j: usize) -> Result<Rope> {
    let d = ar.dag();
    let reversed_red = ar.reduction_arcs(j).intersection(ar.reversed(j));
    match reversed_red.iter().collect::<Vec<_>>()[..] {
        [arc] => Ok(rope_at_arc(d, ar.reversed(j), arc)),
        _ => Err(Error::NotJoinIrreducible),
    }
}

pub fn rope_of_meet_irreducible(ar: &ArLattice, m: usize) -> Result<Rope> {
    let d = ar.dag();
    let unreversed_red = ar.reduction_arcs(m).difference(ar.reversed(m));
    match unreversed_red.iter().collect::<Vec<_>>()[..] {
        [arc] => Ok(rope_at_arc(d, ar.reversed(m), arc)),
        _ => Err(Error::NotJoinIrreducible),
    }
}

/// Two distinct ropes cross when a closed-down vertex of one is a
/// closed-up vertex of the other and vice versa, witnessed by distinct
/// vertices. Equal ropes never cross.
pub fn crossing(a: &Rope, b: &Rope) -> bool {
    if a == b {
        return false;
    }
    let ends_a = VertexSet::from_iter([a.u, a.v]);
    let ends_b = VertexSet::from_iter([b.u, b.v]);
    let x = a.down.union(ends_a).intersection(b.up.union(ends_b));
    let y = a.up.union(ends_a).intersection(b.down.union(ends_b));
    !x.is_empty() && !y.is_empty() && x.union(y).len() >= 2
}

/// Subrope: endpoints inside the closed support, down set and up set
/// contained componentwise.
pub fn is_subrope(a: &Rope, b: &Rope) -> bool {
    VertexSet::from_iter([a.u, a.v]).is_subset(b.support())
        && a.down.is_subset(b.down)
        && a.up.is_subset(b.up)
}

/// Join irreducible below meet irreducible, on the rope side: no arc of
/// the dag from `(up_j + u_j) & (down_m + u_m)` to `(down_j + v_j) &
/// (up_m + v_m)`.
pub fn arrow(d: &Dag, rj: &Rope, rm: &Rope) -> bool {
    let tails = rj.up.with(rj.u).intersection(rm.down.with(rm.u));
    let heads = rj.down.with(rj.v).intersection(rm.up.with(rm.v));
    !d.arcs()
        .iter()
        .any(|&(w, w2)| tails.contains(w) && heads.contains(w2))
}

/// All ropes of a dag, interned with dense indices, plus the precomputed
/// crossing matrix and subrope order.
pub struct RopeSet {
    ropes: Vec<Rope>,
    index: HashMap<Rope, usize>,
    crossing: BitMatrix,
    subrope_leq: BitMatrix,
}

impl RopeSet {
    /// Requires a skeletal dag; this is the regime where ropes model the
    /// irreducibles.
    pub fn new(d: &Dag) -> Result<RopeSet> {
        if !d.is_skeletal() {
            return Err(Error::NotSkeletal);
        }
        Ok(Self::build(d))
    }

    /// Builds the rope list for any dag (interiors by the both-arcs
    /// definition); the bijections with irreducibles only hold when the dag
    /// is skeletal.
    pub fn build(d: &Dag) -> RopeSet {
        let mut ropes = Vec::new();
        for id in 0..d.arc_count() {
            let (u, v) = d.arc(id);
            let interior: Vec<usize> = d.arc_interior(id).iter().collect();
            for mask in 0u32..1 << interior.len() {
                let up = VertexSet::from_iter(
                    interior
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &w)| w),
                );
                let down = VertexSet::from_iter(
                    interior
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 0)
                        .map(|(_, &w)| w),
                );
                ropes.push(Rope { u, v, down, up });
            }
        }
        // canonical order: by arc id, then by down-set bits
        ropes.sort_by_key(|r| {
            (
                d.arc_id(r.u, r.v).expect("rope arc is in the graph"),
                r.down.0,
            )
        });
        let index = ropes.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let m = ropes.len();
        let mut crossing_m = BitMatrix::new(m);
        let mut subrope_leq = BitMatrix::new(m);
        for i in 0..m {
            for j in 0..m {
                if crossing(&ropes[i], &ropes[j]) {
                    crossing_m.set(i, j);
                }
                if is_subrope(&ropes[i], &ropes[j]) {
                    subrope_leq.set(i, j);
                }
            }
        }
        RopeSet {
            ropes,
            index,
            crossing: crossing_m,
            subrope_leq,
        }
    }

    pub fn len(&self) -> usize {
        self.ropes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ropes.is_empty()
    }

    pub fn ropes(&self) -> &[Rope] {
        &self.ropes
    }

    pub fn rope(&self, i: usize) -> &Rope {
        &self.ropes[i]
    }

    pub fn index_of(&self, r: &Rope) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn crossing_ids(&self, a: usize, b: usize) -> bool {
        self.crossing.get(a, b)
    }

    pub fn subrope_leq(&self, a: usize, b: usize) -> bool {
        self.subrope_leq.get(a, b)
    }

    pub fn subrope_poset(&self) -> FinitePoset {
        let m = self.ropes.len();
        FinitePoset::from_relations(
            m,
            (0..m).flat_map(|a| {
                (0..m)
                    .filter(move |&b| self.subrope_leq.get(a, b))
                    .map(move |b| (a, b))
            }),
        )
    }

    pub fn is_noncrossing(&self, ids: &[usize]) -> bool {
        ids.iter()
            .enumerate()
            .all(|(k, &a)| ids[k + 1..].iter().all(|&b| !self.crossing.get(a, b)))
    }
}

/// Ropes of the reversed reduction arcs: the canonical join diagram.
pub fn diagram_join(d: &Dag, ar: &ArLattice, e: usize) -> Vec<Rope> {
    let red = ar.reduction_arcs(e).intersection(ar.reversed(e));
    red.iter()
        .map(|a| rope_at_arc(d, ar.reversed(e), a))
        .collect()
}

/// Ropes of the unreversed reduction arcs: the canonical meet diagram.
pub fn diagram_meet(d: &Dag, ar: &ArLattice, e: usize) -> Vec<Rope> {
    let red = ar.reduction_arcs(e).difference(ar.reversed(e));
    red.iter()
        .map(|a| rope_at_arc(d, ar.reversed(e), a))
        .collect()
}

/// Join of the join irreducibles of a non-crossing rope diagram.
pub fn element_of_join_diagram(d: &Dag, ropes: &[Rope]) -> Result<ArcSet> {
    for (i, a) in ropes.iter().enumerate() {
        for b in &ropes[i + 1..] {
            if crossing(a, b) {
                return Err(Error::CrossingRopes);
            }
        }
    }
    let sets: Vec<ArcSet> = ropes
        .iter()
        .map(|r| join_irreducible_of_rope(d, r))
        .collect();
    Ok(join_unchecked(d, &sets))
}

/// Meet of the meet irreducibles of a non-crossing rope diagram.
pub fn element_of_meet_diagram(d: &Dag, ropes: &[Rope]) -> Result<ArcSet> {
    for (i, a) in ropes.iter().enumerate() {
        for b in &ropes[i + 1..] {
            if crossing(a, b) {
                return Err(Error::CrossingRopes);
            }
        }
    }
    let m = d.arc_count();
    let duals: Vec<ArcSet> = ropes
        .iter()
        .map(|r| meet_irreducible_of_rope(d, r).complement(m))
        .collect();
    Ok(join_unchecked(d, &duals).complement(m))
}

/// A rope bidiagram: a non-crossing join diagram and a non-crossing meet
/// diagram with every cross pair in arrow position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bidiagram {
    pub join_side: Vec<Rope>,
    pub meet_side: Vec<Rope>,
}

impl Bidiagram {
    pub fn is_valid(&self, d: &Dag) -> bool {
        let rs = |v: &[Rope]| {
            v.iter()
                .enumerate()
                .all(|(i, a)| v[i + 1..].iter().all(|b| !crossing(a, b)))
        };
        rs(&self.join_side)
            && rs(&self.meet_side)
            && self
                .join_side
                .iter()
                .all(|rj| self.meet_side.iter().all(|rm| arrow(d, rj, rm)))
    }
}

/// Bidiagram of an interval `[lo, hi]`.
pub fn interval_to_bidiagram(d: &Dag, ar: &ArLattice, lo: usize, hi: usize) -> Result<Bidiagram> {
    if !ar.leq(lo, hi) {
        return Err(Error::NotAnInterval);
    }
    Ok(Bidiagram {
        join_side: diagram_join(d, ar, lo),
        meet_side: diagram_meet(d, ar, hi),
    })
}

/// Interval of a bidiagram, as reversed sets `(lo, hi)`.
pub fn bidiagram_to_interval(d: &Dag, b: &Bidiagram) -> Result<(ArcSet, ArcSet)> {
    let lo = element_of_join_diagram(d, &b.join_side)?;
    let hi = element_of_meet_diagram(d, &b.meet_side)?;
    Ok((lo, hi))
}

/// Rope of a clique: source and target of the induced tournament, clique
/// interior up, rest of the transitive support down.
pub fn rope_of_clique(d: &Dag, k: VertexSet) -> Option<Rope> {
    let members: Vec<usize> = k.iter().collect();
    let source = *members
        .iter()
        .find(|&&u| members.iter().all(|&w| w == u || d.arc_id(u, w).is_some()))?;
    let target = *members
        .iter()
        .find(|&&v| members.iter().all(|&w| w == v || d.arc_id(w, v).is_some()))?;
    let arc = d.arc_id(source, target)?;
    let interior = d.arc_interior(arc);
    let up = k.intersection(interior);
    let down = interior.difference(k);
    Some(Rope {
        u: source,
        v: target,
        down,
        up,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::testgraphs::*;

    fn rope(u: usize, v: usize, down: &[usize], up: &[usize]) -> Rope {
        Rope {
            u,
            v,
            down: VertexSet::from_iter(down.iter().copied()),
            up: VertexSet::from_iter(up.iter().copied()),
        }
    }

    #[test]
    fn rope_counts_match_formula_and_cliques() {
        for d in [k3(), t1(), Dag::tournament(4), Dag::path(4)] {
            let rs = RopeSet::new(&d).unwrap();
            let formula: usize = (0..d.arc_count())
                .map(|a| 1usize << (d.transitive_support(a).len() - 2))
                .sum();
            assert_eq!(rs.len(), formula);
            assert_eq!(rs.len(), d.cliques().len());
        }
        assert_eq!(RopeSet::new(&k3()).unwrap().len(), 4);
        assert_eq!(RopeSet::new(&t1()).unwrap().len(), 5);
        assert_eq!(RopeSet::new(&Dag::tournament(4)).unwrap().len(), 11);
    }

    #[test]
    fn clique_rope_bijection() {
        for d in [k3(), t1(), Dag::tournament(4)] {
            let rs = RopeSet::new(&d).unwrap();
            let mut from_cliques: Vec<Rope> = d
                .cliques()
                .into_iter()
                .map(|k| rope_of_clique(&d, k).expect("cliques induce tournaments"))
                .collect();
            from_cliques.sort();
            from_cliques.dedup();
            assert_eq!(from_cliques.len(), rs.len());
        }
    }

    #[test]
    fn non_skeletal_is_rejected_but_raw_count_available() {
        assert!(matches!(RopeSet::new(&c4()), Err(Error::NotSkeletal)));
        // the remark-level count: 4 ropes but 6 join irreducibles on the
        // oriented 4-cycle
        let rs = RopeSet::build(&c4());
        assert_eq!(rs.len(), 4);
        let ar = ArLattice::new(&c4()).unwrap();
        assert_eq!(ar.join_irreducibles().unwrap().len(), 6);
        // and 16 non-crossing diagrams against 14 elements
        let ids: Vec<usize> = (0..rs.len()).collect();
        let noncrossing = (0u32..1 << rs.len())
            .filter(|mask| {
                let sel: Vec<usize> = ids
                    .iter()
                    .copied()
                    .filter(|&i| mask >> i & 1 == 1)
                    .collect();
                rs.is_noncrossing(&sel)
            })
            .count();
        assert_eq!(noncrossing, 16);
        assert_eq!(ar.len(), 14);
    }

    #[test]
    fn irreducible_rope_bijection_roundtrip() {
        for d in [k3(), t1(), Dag::tournament(4), Dag::path(3)] {
            let ar = ArLattice::new(&d).unwrap();
            let rs = RopeSet::new(&d).unwrap();
            let jis = ar.join_irreducibles().unwrap();
            assert_eq!(jis.len(), rs.len());
            for &j in &jis {
                let r = rope_of_join_irreducible(&ar, j).unwrap();
                assert!(rs.index_of(&r).is_some());
                assert_eq!(join_irreducible_of_rope(&d, &r), ar.reversed(j));
                assert_eq!(ar.down_covers(j).len(), 1);
            }
            let mis = ar.meet_irreducibles().unwrap();
            assert_eq!(mis.len(), rs.len());
            for &m in &mis {
                let r = rope_of_meet_irreducible(&ar, m).unwrap();
                assert_eq!(meet_irreducible_of_rope(&d, &r), ar.reversed(m));
            }
            for r in rs.ropes() {
                let j = ar.index_of(join_irreducible_of_rope(&d, r)).unwrap();
                assert_eq!(rope_of_join_irreducible(&ar, j).unwrap(), *r);
            }
        }
    }

    #[test]
    fn forest_atom_ropes_are_bare_arcs() {
        let d = Dag::path(3);
        let ar = ArLattice::new(&d).unwrap();
        for &j in &ar.join_irreducibles().unwrap() {
            let r = rope_of_join_irreducible(&ar, j).unwrap();
            assert!(r.down.is_empty() && r.up.is_empty());
            assert_eq!(ar.reversed(j).len(), 1);
        }
    }

    #[test]
    fn join_irreducible_of_rope_on_k3() {
        let d = k3();
        // (0, 2, {1}, {}) reverses the arcs leaving 0 into {1, 2}
        let r = rope(0, 2, &[1], &[]);
        assert_eq!(
            join_irreducible_of_rope(&d, &r),
            ArcSet::from_iter([d.arc_id(0, 1).unwrap(), d.arc_id(0, 2).unwrap()])
        );
        // (0, 2, {}, {1}) reverses the arcs entering 2 from {0, 1}
        let r2 = rope(0, 2, &[], &[1]);
        assert_eq!(
            join_irreducible_of_rope(&d, &r2),
            ArcSet::from_iter([d.arc_id(0, 2).unwrap(), d.arc_id(1, 2).unwrap()])
        );
    }

    #[test]
    fn crossing_examples() {
        let a = rope(0, 2, &[1], &[]);
        let b = rope(0, 2, &[], &[1]);
        assert!(crossing(&a, &b));
        assert!(crossing(&b, &a));
        // a rope never crosses itself
        for d in [k3(), t1(), Dag::tournament(4)] {
            for r in RopeSet::new(&d).unwrap().ropes() {
                assert!(!crossing(r, r));
            }
        }
        // disjoint-support ropes on a forest
        let p = Dag::path(4);
        let r1 = rope(0, 1, &[], &[]);
        let r2 = rope(2, 3, &[], &[]);
        assert!(p.arc_id(0, 1).is_some() && p.arc_id(2, 3).is_some());
        assert!(!crossing(&r1, &r2));
    }

    #[test]
    fn diagram_bijection_roundtrip() {
        for d in [k3(), t1(), Dag::tournament(4)] {
            let ar = ArLattice::new(&d).unwrap();
            let rs = RopeSet::new(&d).unwrap();
            let mut seen = std::collections::HashSet::new();
            for e in 0..ar.len() {
                let dj = diagram_join(&d, &ar, e);
                // pairwise non-crossing
                for (i, a) in dj.iter().enumerate() {
                    for b in &dj[i + 1..] {
                        assert!(!crossing(a, b));
                    }
                }
                assert_eq!(element_of_join_diagram(&d, &dj).unwrap(), ar.reversed(e));
                let dm = diagram_meet(&d, &ar, e);
                assert_eq!(element_of_meet_diagram(&d, &dm).unwrap(), ar.reversed(e));
                let mut key: Vec<usize> = dj.iter().map(|r| rs.index_of(r).unwrap()).collect();
                key.sort_unstable();
                seen.insert(key);
            }
            assert_eq!(seen.len(), ar.len());
            // every non-crossing diagram is hit
            let all_noncrossing = (0u64..1 << rs.len())
                .filter(|mask| {
                    let sel: Vec<usize> = (0..rs.len()).filter(|&i| mask >> i & 1 == 1).collect();
                    rs.is_noncrossing(&sel)
                })
                .count();
            assert_eq!(all_noncrossing, ar.len());
        }
    }

    #[test]
    fn empty_diagram_is_bottom() {
        let d = k3();
        assert_eq!(element_of_join_diagram(&d, &[]).unwrap(), ArcSet::EMPTY);
    }

    #[test]
    fn crossing_diagram_rejected() {
        let d = k3();
        let bad = vec![rope(0, 2, &[1], &[]), rope(0, 2, &[], &[1])];
        assert!(matches!(
            element_of_join_diagram(&d, &bad),
            Err(Error::CrossingRopes)
        ));
    }

    #[test]
    fn delta_nabla_valid_on_reduction_arcs() {
        for d in [k3(), t1(), Dag::tournament(4)] {
            let ar = ArLattice::new(&d).unwrap();
            for e in 0..ar.len() {
                for a in ar.reduction_arcs(e).iter() {
                    let r = rope_at_arc(&d, ar.reversed(e), a);
                    let interior = d.arc_interior(a);
                    assert_eq!(r.down.union(r.up), interior);
                    assert!(r.down.intersection(r.up).is_empty());
                }
            }
        }
    }

    #[test]
    fn subrope_examples_and_poset() {
        let base = rope(0, 1, &[], &[]);
        let big = rope(0, 2, &[1], &[]);
        assert!(is_subrope(&base, &big));
        assert!(!is_subrope(&big, &base));
        let other = rope(0, 2, &[], &[1]);
        assert!(!is_subrope(&big, &other) && !is_subrope(&other, &big));

        let rs = RopeSet::new(&k3()).unwrap();
        let poset = rs.subrope_poset();
        // count lower ideals by brute force: 7, the congruences of the weak
        // order on three letters
        let ideals = (0u32..1 << rs.len())
            .filter(|mask| {
                (0..rs.len()).all(|i| {
                    mask >> i & 1 == 0
                        || (0..rs.len()).all(|j| !poset.leq(j, i) || mask >> j & 1 == 1)
                })
            })
            .count();
        assert_eq!(ideals, 7);
    }

    #[test]
    fn kreweras_maps_swap_rope_sides() {
        for d in [k3(), t1(), Dag::tournament(4)] {
            let ar = ArLattice::new(&d).unwrap();
            for &m in &ar.meet_irreducibles().unwrap() {
                let j = ar.kappa_join(m).unwrap();
                assert_eq!(
                    rope_of_join_irreducible(&ar, j).unwrap(),
                    rope_of_meet_irreducible(&ar, m).unwrap()
                );
            }
            for &j in &ar.join_irreducibles().unwrap() {
                let m = ar.kappa_meet(j).unwrap();
                assert_eq!(
                    rope_of_meet_irreducible(&ar, m).unwrap(),
                    rope_of_join_irreducible(&ar, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn canonical_join_complex_is_noncrossing_complex() {
        // faces of the canonical join complex = join diagrams, under the
        // rope bijection; flag since every pairwise non-crossing set occurs
        for d in [k3(), t1()] {
            let ar = ArLattice::new(&d).unwrap();
            let rs = RopeSet::new(&d).unwrap();
            let mut faces = std::collections::HashSet::new();
            for e in 0..ar.len() {
                let rep = ar.canonical_join_representation(e).unwrap();
                let mut ids: Vec<usize> = rep
                    .iter()
                    .map(|&j| {
                        rs.index_of(&rope_of_join_irreducible(&ar, j).unwrap())
                            .unwrap()
                    })
                    .collect();
                ids.sort_unstable();
                assert!(rs.is_noncrossing(&ids));
                faces.insert(ids);
            }
            for mask in 0u64..1 << rs.len() {
                let sel: Vec<usize> = (0..rs.len()).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(rs.is_noncrossing(&sel), faces.contains(&sel));
            }
        }
    }

    #[test]
    fn bidiagrams_count_intervals() {
        for d in [k3(), t1()] {
            let ar = ArLattice::new(&d).unwrap();
            let mut intervals = 0usize;
            for lo in 0..ar.len() {
                for hi in 0..ar.len() {
                    if !ar.leq(lo, hi) {
                        continue;
                    }
                    intervals += 1;
                    let b = interval_to_bidiagram(&d, &ar, lo, hi).unwrap();
                    assert!(b.is_valid(&d));
                    let (lo2, hi2) = bidiagram_to_interval(&d, &b).unwrap();
                    assert_eq!((lo2, hi2), (ar.reversed(lo), ar.reversed(hi)));
                }
            }
            // count all valid bidiagrams directly
            let rs = RopeSet::new(&d).unwrap();
            let noncrossing: Vec<Vec<usize>> = (0u64..1 << rs.len())
                .map(|mask| {
                    (0..rs.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .collect::<Vec<_>>()
                })
                .filter(|sel| rs.is_noncrossing(sel))
                .collect();
            let mut bidiagrams = 0usize;
            for js in &noncrossing {
                for ms in &noncrossing {
                    let ok = js
                        .iter()
                        .all(|&a| ms.iter().all(|&b| arrow(&d, rs.rope(a), rs.rope(b))));
                    if ok {
                        bidiagrams += 1;
                    }
                }
            }
            assert_eq!(bidiagrams, intervals);
        }
        // the weak order on three letters has 17 intervals
        let ar = ArLattice::new(&k3()).unwrap();
        let count = (0..ar.len())
            .flat_map(|lo| (0..ar.len()).map(move |hi| (lo, hi)))
            .filter(|&(lo, hi)| ar.leq(lo, hi))
            .count();
        assert_eq!(count, 17);
    }

    #[test]
    fn arrow_matches_order_on_irreducibles() {
        for d in [k3(), t1()] {
            let ar = ArLattice::new(&d).unwrap();
            let rs = RopeSet::new(&d).unwrap();
            for a in rs.ropes() {
                for b in rs.ropes() {
                    let j = ar.index_of(join_irreducible_of_rope(&d, a)).unwrap();
                    let m = ar.index_of(meet_irreducible_of_rope(&d, b)).unwrap();
                    assert_eq!(arrow(&d, a, b), ar.leq(j, m));
                }
            }
        }
    }

    #[test]
    fn not_an_interval_rejected() {
        let d = k3();
        let ar = ArLattice::new(&d).unwrap();
        assert!(matches!(
            interval_to_bidiagram(&d, &ar, ar.top(), ar.bottom()),
            Err(Error::NotAnInterval)
        ));
    }
}
