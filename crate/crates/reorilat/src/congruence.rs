//! Lattice congruences of the acyclic reorientation lattice, as lower
//! ideals of the subrope order: class computation, quotients, coherent and
//! principal congruences, partial reorientations, convex doubling, and the
//! Hamiltonicity and conjecture harnesses.

use crate::bits::{ArcSet, VertexSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::poset::{self, FinitePoset};
use crate::reorient::{ArLattice, Cover};
use crate::restrict::RestrictionMap;
use crate::rope::{self, Rope, RopeSet};

/// A lower ideal of the subrope order, as a bitmask over rope indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RopeIdeal(pub u64);

/// Everything congruence computations need about one skeletal dag: the
/// lattice, the interned ropes, the rope labels of all covers, and the
/// join/meet diagram masks of all elements.
pub struct SkeletalContext {
    pub dag: Dag,
    pub ar: ArLattice,
    pub ropes: RopeSet,
    pub covers: Vec<Cover>,
    /// Rope index of `k_join` of each cover: the rope read off the flipped
    /// arc in the upper element.
    pub cover_rope: Vec<u8>,
    /// Rope bitmask of the canonical join diagram of each element.
    pub elem_join_mask: Vec<u64>,
    /// Rope bitmask of the canonical meet diagram of each element.
    pub elem_meet_mask: Vec<u64>,
    /// Lower-cover masks in the subrope order, for ideal enumeration.
    subrope_down_covers: Vec<u64>,
    subrope_topo: Vec<usize>,
}

impl SkeletalContext {
    pub fn new(dag: &Dag) -> Result<SkeletalContext> {
        let ropes = RopeSet::new(dag)?;
        if ropes.len() > 64 {
            return Err(Error::InvalidInput(format!(
                "{} ropes exceed the 64-rope ideal representation",
                ropes.len()
            )));
        }
        let ar = ArLattice::new(dag)?;
        let covers: Vec<Cover> = ar.covers().collect();
        let cover_rope = covers
            .iter()
            .map(|c| {
                let r = rope::rope_at_arc(dag, ar.reversed(c.hi as usize), c.arc as usize);
                ropes.index_of(&r).expect("cover rope exists") as u8
            })
            .collect();
        let mask_of = |e: usize, join_side: bool| {
            let red = ar.reduction_arcs(e);
            let rev = ar.reversed(e);
            let arcs = if join_side {
                red.intersection(rev)
            } else {
                red.difference(rev)
            };
            let mut mask = 0u64;
            for a in arcs.iter() {
                let r = rope::rope_at_arc(dag, rev, a);
                mask |= 1 << ropes.index_of(&r).expect("diagram rope exists");
            }
            mask
        };
        let elem_join_mask = (0..ar.len()).map(|e| mask_of(e, true)).collect();
        let elem_meet_mask = (0..ar.len()).map(|e| mask_of(e, false)).collect();

        // subrope order: lower covers and a topological order
        let sub_poset = ropes.subrope_poset();
        let subrope_down_covers = (0..ropes.len())
            .map(|i| {
                sub_poset
                    .down_covers(i)
                    .iter()
                    .fold(0u64, |m, &j| m | 1 << j)
            })
            .collect();
        let mut subrope_topo: Vec<usize> = (0..ropes.len()).collect();
        subrope_topo.sort_by_key(|&i| (0..ropes.len()).filter(|&j| sub_poset.leq(j, i)).count());

        Ok(SkeletalContext {
            dag: dag.clone(),
            ar,
            ropes,
            covers,
            cover_rope,
            elem_join_mask,
            elem_meet_mask,
            subrope_down_covers,
            subrope_topo,
        })
    }

    pub fn full_ideal(&self) -> RopeIdeal {
        RopeIdeal(if self.ropes.len() == 64 {
            u64::MAX
        } else {
            (1 << self.ropes.len()) - 1
        })
    }

    /// Validates downward closure in the subrope order.
    pub fn ideal(&self, mask: u64) -> Result<RopeIdeal> {
        for i in 0..self.ropes.len() {
            if mask >> i & 1 == 1 {
                for j in 0..self.ropes.len() {
                    if self.ropes.subrope_leq(j, i) && mask >> j & 1 == 0 {
                        return Err(Error::InvalidIdeal);
                    }
                }
            }
        }
        Ok(RopeIdeal(mask))
    }

    /// Ropes whose down set fits in `down_dec` and up set in `up_dec`.
    pub fn coherent_ideal(&self, down_dec: VertexSet, up_dec: VertexSet) -> RopeIdeal {
        let mut mask = 0u64;
        for (i, r) in self.ropes.ropes().iter().enumerate() {
            if r.down.is_subset(down_dec) && r.up.is_subset(up_dec) {
                mask |= 1 << i;
            }
        }
        RopeIdeal(mask)
    }

    pub fn sylvester_ideal(&self) -> RopeIdeal {
        self.coherent_ideal(self.dag.all_vertices(), VertexSet::EMPTY)
    }

    /// All subropes of the given rope (reflexive).
    pub fn principal_ideal(&self, r: &Rope) -> Result<RopeIdeal> {
        let top = self
            .ropes
            .index_of(r)
            .ok_or_else(|| Error::InvalidInput(format!("not a rope of this graph: {r:?}")))?;
        let mut mask = 0u64;
        for j in 0..self.ropes.len() {
            if self.ropes.subrope_leq(j, top) {
                mask |= 1 << j;
            }
        }
        Ok(RopeIdeal(mask))
    }

    /// Streams every lower ideal of the subrope order, in a deterministic
    /// order. Elements are decided along a topological order, so downward
    /// closure is a mask test against the already-decided part.
    pub fn for_each_ideal(&self, mut f: impl FnMut(u64)) {
        fn rec(topo: &[usize], down: &[u64], k: usize, mask: u64, f: &mut impl FnMut(u64)) {
            let Some(&e) = topo.get(k) else {
                f(mask);
                return;
            };
            rec(topo, down, k + 1, mask, f);
            if down[e] & !mask == 0 {
                rec(topo, down, k + 1, mask | 1 << e, f);
            }
        }
        rec(&self.subrope_topo, &self.subrope_down_covers, 0, 0, &mut f);
    }

    pub fn count_ideals(&self) -> u64 {
        let mut n = 0;
        self.for_each_ideal(|_| n += 1);
        n
    }

    /// Parallel ideal sweep: prefixes of the decision tree are expanded
    /// sequentially, subtrees run on the thread pool.
    pub fn par_for_each_ideal<F: Fn(u64) + Sync>(&self, split_depth: usize, f: F) {
        use rayon::prelude::*;
        let depth = split_depth.min(self.subrope_topo.len());
        let mut prefixes = vec![0u64];
        for k in 0..depth {
            let e = self.subrope_topo[k];
            let mut next = Vec::with_capacity(prefixes.len() * 2);
            for mask in prefixes {
                next.push(mask);
                if self.subrope_down_covers[e] & !mask == 0 {
                    next.push(mask | 1 << e);
                }
            }
            prefixes = next;
        }
        fn rec(topo: &[usize], down: &[u64], k: usize, mask: u64, f: &impl Fn(u64)) {
            let Some(&e) = topo.get(k) else {
                f(mask);
                return;
            };
            rec(topo, down, k + 1, mask, f);
            if down[e] & !mask == 0 {
                rec(topo, down, k + 1, mask | 1 << e, f);
            }
        }
        prefixes.par_iter().for_each(|&mask| {
            rec(
                &self.subrope_topo,
                &self.subrope_down_covers,
                depth,
                mask,
                &f,
            );
        });
    }

    pub fn congruence(&self, ideal: RopeIdeal) -> Congruence {
        Congruence::new(self, ideal)
    }
}

/// A lattice congruence: classes of the acyclic reorientation lattice,
/// computed as connected components over contracted covers. A cover is
/// contracted when the rope of its `k_join` lies outside the ideal.
pub struct Congruence {
    pub ideal: RopeIdeal,
    pub class_of: Vec<u32>,
    /// Minimum element of each class (class ids are ordered by it).
    pub minima: Vec<u32>,
    pub maxima: Vec<u32>,
}

impl Congruence {
    pub fn new(ctx: &SkeletalContext, ideal: RopeIdeal) -> Congruence {
        let n = ctx.ar.len();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for (c, &r) in ctx.covers.iter().zip(&ctx.cover_rope) {
            if ideal.0 >> r & 1 == 0 {
                let (a, b) = (find(&mut parent, c.lo), find(&mut parent, c.hi));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        // classes indexed by increasing minimum; element order is the lex
        // order on reversed sets, so the first member seen is the minimum
        let mut class_ids = vec![u32::MAX; n];
        let mut minima = Vec::new();
        let mut maxima = Vec::new();
        let mut class_of = vec![0u32; n];
        for x in 0..n as u32 {
            let r = find(&mut parent, x);
            if class_ids[r as usize] == u32::MAX {
                class_ids[r as usize] = minima.len() as u32;
                minima.push(x);
                maxima.push(x);
            }
            let id = class_ids[r as usize];
            class_of[x as usize] = id;
            maxima[id as usize] = x;
        }
        // cross-check the diagram characterization of class extremes
        for x in 0..n {
            let is_min = ctx.elem_join_mask[x] & !ideal.0 == 0;
            debug_assert_eq!(is_min, minima[class_of[x] as usize] as usize == x);
            let is_max = ctx.elem_meet_mask[x] & !ideal.0 == 0;
            debug_assert_eq!(is_max, maxima[class_of[x] as usize] as usize == x);
        }
        Congruence {
            ideal,
            class_of,
            minima,
            maxima,
        }
    }

    pub fn class_count(&self) -> usize {
        self.minima.len()
    }

    /// Elements of each class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(x);
        }
        out
    }

    /// Checks the minimum/maximum diagram characterization and that every
    /// class is the full order interval between its extremes.
    pub fn verify_interval_structure(&self, ctx: &SkeletalContext) -> bool {
        let n = ctx.ar.len();
        for x in 0..n {
            let c = self.class_of[x] as usize;
            let is_min = ctx.elem_join_mask[x] & !self.ideal.0 == 0;
            if is_min != (self.minima[c] as usize == x) {
                return false;
            }
            let is_max = ctx.elem_meet_mask[x] & !self.ideal.0 == 0;
            if is_max != (self.maxima[c] as usize == x) {
                return false;
            }
        }
        let sizes = {
            let mut s = vec![0usize; self.class_count()];
            for &c in &self.class_of {
                s[c as usize] += 1;
            }
            s
        };
        (0..self.class_count()).all(|c| {
            let (lo, hi) = (self.minima[c] as usize, self.maxima[c] as usize);
            let interval = (0..n)
                .filter(|&x| ctx.ar.leq(lo, x) && ctx.ar.leq(x, hi))
                .count();
            interval == sizes[c]
        })
    }

    /// The quotient as the subposet induced by class minima.
    pub fn quotient_poset(&self, ctx: &SkeletalContext) -> FinitePoset {
        let q = self.class_count();
        let minima = &self.minima;
        FinitePoset::from_relations(
            q,
            (0..q).flat_map(|a| {
                (0..q)
                    .filter(move |&b| ctx.ar.leq(minima[a] as usize, minima[b] as usize))
                    .map(move |b| (a, b))
            }),
        )
    }

    /// Undirected cover graph of the quotient: one edge per uncontracted
    /// cover between distinct classes.
    pub fn quotient_cover_graph(&self, ctx: &SkeletalContext) -> Vec<Vec<usize>> {
        let q = self.class_count();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for c in &ctx.covers {
            let (a, b) = (self.class_of[c.lo as usize], self.class_of[c.hi as usize]);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); q];
        for (a, b) in edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// Directed quotient Hasse edges `(lower class, upper class, cover rope)`.
    pub fn quotient_hasse_edges(&self, ctx: &SkeletalContext) -> Vec<(u32, u32, u8)> {
        let mut edges: Vec<(u32, u32, u8)> = Vec::new();
        for (c, &r) in ctx.covers.iter().zip(&ctx.cover_rope) {
            let (a, b) = (self.class_of[c.lo as usize], self.class_of[c.hi as usize]);
            if a != b {
                edges.push((a, b, r));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// The class of the join of two class representatives; well defined for
    /// lattice congruences.
    pub fn join_class(&self, ctx: &SkeletalContext, a: usize, b: usize) -> usize {
        let j = crate::reorient::join_unchecked(
            &ctx.dag,
            &[
                ctx.ar.reversed(self.minima[a] as usize),
                ctx.ar.reversed(self.minima[b] as usize),
            ],
        );
        self.class_of[ctx.ar.index_of(j).expect("join is acyclic")] as usize
    }
}

// ---------------------------------------------------------------------------
// Partial acyclic reorientations
// ---------------------------------------------------------------------------

/// A partial acyclic reorientation: a subset of arcs of the dag, each with
/// an orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartialReorientation {
    pub present: ArcSet,
    /// Reversed arcs; a subset of `present`.
    pub reversed: ArcSet,
}

impl PartialReorientation {
    /// Reversed part (`P \ D` in orientation terms).
    pub fn join_part(&self) -> ArcSet {
        self.reversed
    }

    /// Forward part (`P n D`).
    pub fn meet_part(&self) -> ArcSet {
        self.present.difference(self.reversed)
    }

    /// `P <= Q` iff the reversed part grows and the forward part shrinks,
    /// matching inclusion of reversed sets on full orientations.
    pub fn leq(&self, other: &PartialReorientation) -> bool {
        self.join_part().is_subset(other.join_part())
            && other.meet_part().is_subset(self.meet_part())
    }

    /// Oriented arc `(a, b)` present?
    pub fn has_oriented(&self, d: &Dag, a: usize, b: usize) -> bool {
        if let Some(id) = d.arc_id(a, b) {
            self.present.contains(id) && !self.reversed.contains(id)
        } else if let Some(id) = d.arc_id(b, a) {
            self.present.contains(id) && self.reversed.contains(id)
        } else {
            false
        }
    }

    pub fn oriented_arcs(&self, d: &Dag) -> Vec<(usize, usize)> {
        self.present
            .iter()
            .map(|id| d.oriented_arc(id, self.reversed))
            .collect()
    }

    /// Transitive reduction within the partial orientation.
    pub fn reduced(&self, d: &Dag) -> PartialReorientation {
        let n = d.n();
        let mut out = vec![VertexSet::EMPTY; n];
        for id in self.present.iter() {
            let (t, h) = d.oriented_arc(id, self.reversed);
            out[t].insert(h);
        }
        // reachability restricted to present arcs
        let mut reach = out.clone();
        loop {
            let mut changed = false;
            for v in 0..n {
                let mut r = reach[v];
                for w in reach[v].iter() {
                    r = r.union(reach[w]);
                }
                if r != reach[v] {
                    reach[v] = r;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut keep = ArcSet::EMPTY;
        'arcs: for id in self.present.iter() {
            let (t, h) = d.oriented_arc(id, self.reversed);
            for w in out[t].iter() {
                if w != h && reach[w].contains(h) {
                    continue 'arcs;
                }
            }
            keep.insert(id);
        }
        PartialReorientation {
            present: keep,
            reversed: self.reversed.intersection(keep),
        }
    }
}

/// Arcs oriented the same way in every reorientation of the interval of
/// classes `[lo_class, hi_class]` of the quotient.
pub fn partial_of_interval(
    ctx: &SkeletalContext,
    cong: &Congruence,
    lo_class: usize,
    hi_class: usize,
) -> Result<PartialReorientation> {
    let lo = cong.minima[lo_class] as usize;
    let hi = cong.maxima[hi_class] as usize;
    // interval of the quotient: lo_class below hi_class in the quotient order
    if !ctx.ar.leq(lo, cong.minima[hi_class] as usize) {
        return Err(Error::NotAnInterval);
    }
    let reversed_everywhere = ctx.ar.reversed(lo);
    let forward_everywhere = ctx.ar.reversed(hi).complement(ctx.dag.arc_count());
    Ok(PartialReorientation {
        present: reversed_everywhere.union(forward_everywhere),
        reversed: reversed_everywhere,
    })
}

pub fn partial_of_class(
    ctx: &SkeletalContext,
    cong: &Congruence,
    class: usize,
) -> PartialReorientation {
    partial_of_interval(ctx, cong, class, class).expect("a class is an interval")
}

/// Decoration-level minimum/maximum test: every reversed (resp. unreversed)
/// arc must have its down set inside `down_dec` and up set inside `up_dec`.
pub fn min_max_by_decoration(
    d: &Dag,
    e: ArcSet,
    down_dec: VertexSet,
    up_dec: VertexSet,
) -> (bool, bool) {
    let fits = |arc: usize| {
        rope::arc_down_set(d, e, arc).is_subset(down_dec)
            && rope::arc_up_set(d, e, arc).is_subset(up_dec)
    };
    let is_min = e.iter().all(&fits);
    let is_max = e.complement(d.arc_count()).iter().all(&fits);
    (is_min, is_max)
}

/// Interval criterion for coherent congruences: the partial reorientation
/// must be transitively closed on graph pairs, and for every oriented arc
/// `(a, b)` and every vertex `w` interior to the underlying arc, `(a, w)`
/// or `(w, b)` is present, `(a, w)` is present whenever `w` is undecorated
/// down, and `(w, b)` whenever `w` is undecorated up.
pub fn coherent_interval_check(
    d: &Dag,
    p: &PartialReorientation,
    down_dec: VertexSet,
    up_dec: VertexSet,
) -> bool {
    // closure: a directed path of present arcs forces its closing arc
    let n = d.n();
    let mut reach = vec![VertexSet::EMPTY; n];
    for id in p.present.iter() {
        let (t, h) = d.oriented_arc(id, p.reversed);
        reach[t].insert(h);
    }
    loop {
        let mut changed = false;
        for v in 0..n {
            let mut r = reach[v];
            for w in reach[v].iter() {
                r = r.union(reach[w]);
            }
            if r != reach[v] {
                reach[v] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for x in 0..n {
        for y in reach[x].iter() {
            if (d.arc_id(x, y).is_some() || d.arc_id(y, x).is_some()) && !p.has_oriented(d, x, y) {
                return false;
            }
        }
    }
    for id in p.present.iter() {
        let (a, b) = d.oriented_arc(id, p.reversed);
        for w in d.arc_interior(id).iter() {
            let aw = p.has_oriented(d, a, w);
            let wb = p.has_oriented(d, w, b);
            if !aw && !wb {
                return false;
            }
            if !down_dec.contains(w) && !aw {
                return false;
            }
            if !up_dec.contains(w) && !wb {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Congruence transport along restriction maps
// ---------------------------------------------------------------------------

/// Reinterprets an ideal of the subgraph as an ideal of the ambient graph;
/// requires the subgraph to be pathful (its ropes are then exactly the
/// ambient ropes supported on its arcs).
pub fn extend_ideal(
    map: &RestrictionMap,
    ctx: &SkeletalContext,
    ctx_sub: &SkeletalContext,
    ideal_sub: RopeIdeal,
) -> Result<RopeIdeal> {
    if !map.is_pathful() {
        return Err(Error::NotPathful);
    }
    let mut mask = 0u64;
    for (i, r) in ctx_sub.ropes.ropes().iter().enumerate() {
        if ideal_sub.0 >> i & 1 == 1 {
            let amb = ctx
                .ropes
                .index_of(r)
                .ok_or_else(|| Error::InvalidInput("rope does not lift".into()))?;
            mask |= 1 << amb;
        }
    }
    ctx.ideal(mask)
}

/// Keeps the ropes supported on subgraph arcs; requires the subgraph to be
/// strongly pathful.
pub fn restrict_ideal(
    map: &RestrictionMap,
    ctx: &SkeletalContext,
    ctx_sub: &SkeletalContext,
    ideal: RopeIdeal,
) -> Result<RopeIdeal> {
    if !map.is_strongly_pathful() {
        return Err(Error::NotStronglyPathful);
    }
    let mut mask = 0u64;
    for (i, r) in ctx.ropes.ropes().iter().enumerate() {
        if ideal.0 >> i & 1 == 1 {
            if let Some(sub) = ctx_sub.ropes.index_of(r) {
                mask |= 1 << sub;
            }
        }
    }
    ctx_sub.ideal(mask)
}

// ---------------------------------------------------------------------------
// Convex doubling sequence
// ---------------------------------------------------------------------------

pub struct DoublingStep {
    pub base: Dag,
    pub extended: Dag,
    pub added_arc: (usize, usize),
    /// Elements of the base lattice completable with the new arc in both
    /// directions.
    pub doubled_set: Vec<usize>,
    pub set_is_order_convex: bool,
    pub doubling_isomorphic: bool,
    /// Whether the doubled set splits into intervals (true for skeletal
    /// graphs, where the doubling refines into interval doublings).
    pub splits_into_intervals: bool,
}

/// Builds the dag back up from its transitive reduction, one arc at a time
/// in transitive-support order, doubling an order convex set at each step.
pub fn doubling_sequence(d: &Dag) -> Result<Vec<DoublingStep>> {
    if !d.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    let reduction = d.transitive_reduction();
    let mut added: Vec<usize> = (0..d.arc_count())
        .filter(|&id| reduction.arc_id(d.arc(id).0, d.arc(id).1).is_none())
        .collect();
    added.sort_by_key(|&id| (d.transitive_support(id).len(), id));

    let mut steps = Vec::new();
    let mut current = reduction;
    for id in added {
        let (u, v) = d.arc(id);
        let base = current.clone();
        let mut arcs = base.arcs().to_vec();
        arcs.push((u, v));
        let extended = Dag::new(d.n(), arcs).expect("suborientation of a dag");
        let ar_base = ArLattice::new(&base)?;

        let mut doubled = Vec::new();
        for i in 0..ar_base.len() {
            let reach = base
                .reach(ar_base.reversed(i))
                .expect("elements are acyclic");
            let forward_ok = !reach[v].contains(u); // can add u -> v
            let backward_ok = !reach[u].contains(v); // can add v -> u
            if forward_ok && backward_ok {
                doubled.push(i);
            }
        }

        let in_z: Vec<bool> = (0..ar_base.len()).map(|i| doubled.contains(&i)).collect();
        let set_is_order_convex = check_order_convex(&ar_base, &doubled);
        let doubling_isomorphic = check_doubling_isomorphism(&base, &extended, &ar_base, &in_z);
        let splits_into_intervals = check_interval_partition(&ar_base, &doubled);

        steps.push(DoublingStep {
            base,
            extended: extended.clone(),
            added_arc: (u, v),
            doubled_set: doubled,
            set_is_order_convex,
            doubling_isomorphic,
            splits_into_intervals,
        });
        current = extended;
    }
    Ok(steps)
}

fn check_order_convex(ar: &ArLattice, members: &[usize]) -> bool {
    members.iter().all(|&x| {
        members.iter().all(|&z| {
            (0..ar.len()).all(|y| !(ar.leq(x, y) && ar.leq(y, z)) || members.contains(&y))
        })
    })
}

fn check_interval_partition(ar: &ArLattice, members: &[usize]) -> bool {
    // connected components of the cover graph restricted to the set
    let mut comp: Vec<usize> = (0..members.len()).collect();
    fn find(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for (i, &x) in members.iter().enumerate() {
        for &(y, _) in ar.up_covers(x) {
            if let Some(j) = members.iter().position(|&m| m == y as usize) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                if a != b {
                    comp[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for i in 0..members.len() {
        let r = find(&mut comp, i);
        groups.entry(r).or_default().push(members[i]);
    }
    groups.values().all(|g| {
        let lo = *g.iter().min_by_key(|&&x| ar.reversed(x).0).unwrap();
        let hi = *g.iter().max_by_key(|&&x| ar.reversed(x).0).unwrap();
        g.iter().all(|&x| ar.leq(lo, x) && ar.leq(x, hi))
            && (0..ar.len())
                .filter(|&x| ar.leq(lo, x) && ar.leq(x, hi))
                .count()
                == g.len()
    })
}

/// The natural bijection from the extended lattice to the doubling of the
/// completable set, checked to be an order isomorphism.
fn check_doubling_isomorphism(
    base: &Dag,
    extended: &Dag,
    ar_base: &ArLattice,
    in_z: &[bool],
) -> bool {
    let Ok(ar_ext) = ArLattice::new(extended) else {
        return false;
    };
    let (doubled, labels) = ar_base.as_poset().doubling(in_z);
    let mut node_of = std::collections::HashMap::new();
    for (idx, &(elem, copy)) in labels.iter().enumerate() {
        node_of.insert((elem, copy), idx);
    }
    let added_id = {
        let mut it = (0..extended.arc_count())
            .filter(|&i| base.arc_id(extended.arc(i).0, extended.arc(i).1).is_none());
        let id = it.next().expect("one added arc");
        debug_assert!(it.next().is_none());
        id
    };
    // map each extended element to a node of the doubled poset
    let mut image = Vec::with_capacity(ar_ext.len());
    for e in 0..ar_ext.len() {
        let rev_ext = ar_ext.reversed(e);
        let mut rev_base = ArcSet::EMPTY;
        for i in 0..extended.arc_count() {
            if i != added_id && rev_ext.contains(i) {
                let (x, y) = extended.arc(i);
                rev_base.insert(base.arc_id(x, y).expect("shared arc"));
            }
        }
        let b = ar_base.index_of(rev_base).expect("restriction is acyclic");
        let node = if in_z[b] {
            node_of[&(b, Some(usize::from(rev_ext.contains(added_id))))]
        } else {
            node_of[&(b, None)]
        };
        image.push(node);
    }
    if ar_ext.len() != doubled.len() {
        return false;
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != doubled.len() {
        return false;
    }
    (0..ar_ext.len())
        .all(|a| (0..ar_ext.len()).all(|b| ar_ext.leq(a, b) == doubled.leq(image[a], image[b])))
}

// ---------------------------------------------------------------------------
// Conjecture harness
// ---------------------------------------------------------------------------

/// The three 4-vertex obstructions to Tamari cover-graph regularity, as
/// canonical keys. Derived by sweeping all skeletal dags on four vertices:
/// these are exactly the ones whose sylvester quotient has an irregular
/// cover graph.
pub fn tamari_obstruction_keys() -> Vec<Vec<(usize, usize)>> {
    skeletal_4v_with(|report| !report.tamari_regular)
}

/// The 4-vertex obstruction to all Cambrian lattices having the same size.
pub fn cambrian_obstruction_keys() -> Vec<Vec<(usize, usize)>> {
    skeletal_4v_with(|report| !report.cambrian_counts_equal)
}

fn skeletal_4v_with(pred: impl Fn(&HarnessGraphReport) -> bool) -> Vec<Vec<(usize, usize)>> {
    crate::corpus::dags_up_to_iso(4)
        .into_iter()
        .filter(|d| d.is_skeletal())
        .filter_map(|d| {
            let report = harness_report(&d).expect("skeletal context");
            pred(&report).then(|| d.canonical_key())
        })
        .collect()
}

pub fn has_induced_pattern(d: &Dag, patterns: &[Vec<(usize, usize)>]) -> bool {
    let n = d.n();
    for mask in 0u32..1 << n {
        let s = VertexSet(mask);
        if s.len() != 4 {
            continue;
        }
        let key = d.induced(s).0.canonical_key();
        if patterns.contains(&key) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug)]
pub struct HarnessGraphReport {
    pub tamari_regular: bool,
    pub tamari_class_reductions_are_forests: bool,
    pub cambrian_counts_equal: bool,
    pub cambrian_graphs_isomorphic: bool,
}

/// Sylvester and Cambrian diagnostics of one skeletal dag.
pub fn harness_report(d: &Dag) -> Result<HarnessGraphReport> {
    let ctx = SkeletalContext::new(d)?;
    let sylvester = ctx.congruence(ctx.sylvester_ideal());
    let graph = sylvester.quotient_cover_graph(&ctx);
    let degrees: Vec<usize> = graph.iter().map(|row| row.len()).collect();
    let tamari_regular = degrees.windows(2).all(|w| w[0] == w[1]);
    let tamari_class_reductions_are_forests = (0..sylvester.class_count()).all(|c| {
        let r = partial_of_class(&ctx, &sylvester, c).reduced(d);
        is_forest_partial(d, &r)
    });

    // all Cambrian congruences: decorations partitioning the vertex set
    let mut seen_ideals = std::collections::HashSet::new();
    let mut quotients: Vec<Vec<Vec<usize>>> = Vec::new();
    for mask in 0u32..1 << d.n() {
        let down = VertexSet(mask);
        let up = down.complement(d.n());
        let ideal = ctx.coherent_ideal(down, up);
        if !seen_ideals.insert(ideal.0) {
            continue;
        }
        let cong = ctx.congruence(ideal);
        quotients.push(cong.quotient_cover_graph(&ctx));
    }
    let cambrian_counts_equal = quotients.windows(2).all(|w| w[0].len() == w[1].len());
    let cambrian_graphs_isomorphic = quotients
        .windows(2)
        .all(|w| poset::graph_isomorphic(&w[0], &w[1]));

    Ok(HarnessGraphReport {
        tamari_regular,
        tamari_class_reductions_are_forests,
        cambrian_counts_equal,
        cambrian_graphs_isomorphic,
    })
}

pub fn is_forest_partial(d: &Dag, p: &PartialReorientation) -> bool {
    let mut parent: Vec<usize> = (0..d.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for id in p.present.iter() {
        let (u, v) = d.arc(id);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::testgraphs::*;
    use crate::poset::hamiltonian_cycle;

    #[test]
    fn full_ideal_gives_trivial_congruence() {
        let ctx = SkeletalContext::new(&k3()).unwrap();
        let cong = ctx.congruence(ctx.full_ideal());
        assert_eq!(cong.class_count(), ctx.ar.len());
        assert!(cong.verify_interval_structure(&ctx));
    }

    #[test]
    fn reduction_ropes_only_ideal_gives_boolean_quotient() {
        let d = t1();
        let ctx = SkeletalContext::new(&d).unwrap();
        let ideal = ctx.coherent_ideal(VertexSet::EMPTY, VertexSet::EMPTY);
        // only the bare reduction-arc ropes survive
        for (i, r) in ctx.ropes.ropes().iter().enumerate() {
            let bare = r.down.is_empty() && r.up.is_empty();
            assert_eq!(ideal.0 >> i & 1 == 1, bare);
        }
        let cong = ctx.congruence(ideal);
        let red = d.transitive_reduction();
        assert_eq!(cong.class_count() as u128, red.acyclic_orientation_count());
        assert!(cong.verify_interval_structure(&ctx));
    }

    #[test]
    fn k3_sylvester_is_tamari_pentagon() {
        let ctx = SkeletalContext::new(&k3()).unwrap();
        let ideal = ctx.sylvester_ideal();
        assert_eq!(ideal.0.count_ones(), 3); // omits the up-decorated rope of (0,2)
        let cong = ctx.congruence(ideal);
        assert_eq!(cong.class_count(), 5);
        let q = cong.quotient_poset(&ctx);
        assert!(q.is_lattice());
        // pentagon Hasse: 5 cover relations
        assert_eq!(q.cover_pairs().count(), 5);
        // the quotient Hasse from uncontracted covers agrees
        let mut from_poset: Vec<(u32, u32)> =
            q.cover_pairs().map(|(a, b)| (a as u32, b as u32)).collect();
        from_poset.sort_unstable();
        let mut from_covers: Vec<(u32, u32)> = cong
            .quotient_hasse_edges(&ctx)
            .iter()
            .map(|&(a, b, _)| (a, b))
            .collect();
        from_covers.dedup();
        assert_eq!(from_covers, from_poset);
    }

    #[test]
    fn k4_sylvester_has_catalan_classes() {
        let ctx = SkeletalContext::new(&Dag::tournament(4)).unwrap();
        let cong = ctx.congruence(ctx.sylvester_ideal());
        assert_eq!(cong.class_count(), 14);
        assert!(cong.verify_interval_structure(&ctx));
    }

    #[test]
    fn ideal_count_matches_congruence_lattice() {
        // the weak order on three letters has 7 congruences
        let ctx = SkeletalContext::new(&k3()).unwrap();
        assert_eq!(ctx.count_ideals(), 7);
        let poset = ctx.ar.as_poset();
        let tables = crate::poset::LatticeTables::new(&poset).unwrap();
        assert_eq!(tables.all_congruences(&poset).len(), 7);
        // and the congruences computed from ideals are pairwise distinct
        let mut partitions = std::collections::HashSet::new();
        ctx.for_each_ideal(|mask| {
            let cong = ctx.congruence(RopeIdeal(mask));
            partitions.insert(cong.class_of.clone());
        });
        assert_eq!(partitions.len(), 7);
    }

    #[test]
    fn congruence_respects_join() {
        for d in [k3(), t1()] {
            let ctx = SkeletalContext::new(&d).unwrap();
            ctx.for_each_ideal(|mask| {
                let cong = ctx.congruence(RopeIdeal(mask));
                for x in 0..ctx.ar.len() {
                    for y in 0..ctx.ar.len() {
                        let j = crate::reorient::join_unchecked(
                            &ctx.dag,
                            &[ctx.ar.reversed(x), ctx.ar.reversed(y)],
                        );
                        let jc = cong.class_of[ctx.ar.index_of(j).unwrap()] as usize;
                        let via_min = cong.join_class(
                            &ctx,
                            cong.class_of[x] as usize,
                            cong.class_of[y] as usize,
                        );
                        assert_eq!(jc, via_min);
                    }
                }
            });
        }
    }

    #[test]
    fn principal_ideal_examples() {
        let ctx = SkeletalContext::new(&k3()).unwrap();
        let bare = Rope {
            u: 0,
            v: 1,
            down: VertexSet::EMPTY,
            up: VertexSet::EMPTY,
        };
        assert_eq!(ctx.principal_ideal(&bare).unwrap().0.count_ones(), 1);
        let big = Rope {
            u: 0,
            v: 2,
            down: VertexSet::singleton(1),
            up: VertexSet::EMPTY,
        };
        let ideal = ctx.principal_ideal(&big).unwrap();
        assert_eq!(ideal.0.count_ones(), 3);
        for r in ctx.ropes.ropes() {
            let ideal = ctx.principal_ideal(r).unwrap();
            assert!(ctx.ideal(ideal.0).is_ok());
        }
    }

    #[test]
    fn t1_principal_quotient_golden_value() {
        // contracting everything outside the principal ideal of the big
        // rope of the triangle collapses the pendant direction too
        let d = t1();
        let ctx = SkeletalContext::new(&d).unwrap();
        let r = Rope {
            u: 0,
            v: 2,
            down: VertexSet::singleton(1),
            up: VertexSet::EMPTY,
        };
        let cong = ctx.congruence(ctx.principal_ideal(&r).unwrap());
        assert_eq!(cong.class_count(), 5);
        assert!(cong.verify_interval_structure(&ctx));
    }

    #[test]
    fn invalid_ideal_rejected() {
        let ctx = SkeletalContext::new(&k3()).unwrap();
        let big = Rope {
            u: 0,
            v: 2,
            down: VertexSet::singleton(1),
            up: VertexSet::EMPTY,
        };
        let top = ctx.ropes.index_of(&big).unwrap();
        assert!(matches!(ctx.ideal(1 << top), Err(Error::InvalidIdeal)));
    }

    #[test]
    fn decoration_minima_match_class_minima() {
        for d in [k3(), t1()] {
            let ctx = SkeletalContext::new(&d).unwrap();
            for mask in 0u32..1 << d.n() {
                let down = VertexSet(mask);
                for mask2 in 0u32..1 << d.n() {
                    let up = VertexSet(mask2);
                    let cong = ctx.congruence(ctx.coherent_ideal(down, up));
                    for x in 0..ctx.ar.len() {
                        let (is_min, is_max) =
                            min_max_by_decoration(&d, ctx.ar.reversed(x), down, up);
                        let c = cong.class_of[x] as usize;
                        assert_eq!(is_min, cong.minima[c] as usize == x);
                        assert_eq!(is_max, cong.maxima[c] as usize == x);
                    }
                }
            }
        }
    }

    #[test]
    fn k3_sylvester_minima() {
        let d = k3();
        let ctx = SkeletalContext::new(&d).unwrap();
        let cong = ctx.congruence(ctx.sylvester_ideal());
        // the doubled class merges rev{(1,2)} with rev{(0,2),(1,2)}; the
        // latter is the one non-minimal element
        let a02 = d.arc_id(0, 2).unwrap();
        let a12 = d.arc_id(1, 2).unwrap();
        let e312 = ctx.ar.index_of(ArcSet::from_iter([a02, a12])).unwrap();
        let c = cong.class_of[e312] as usize;
        assert_ne!(cong.minima[c] as usize, e312);
        let e132 = ctx.ar.index_of(ArcSet::singleton(a12)).unwrap();
        assert_eq!(cong.minima[c] as usize, e132);
    }

    #[test]
    fn partial_reorientations_of_trivial_congruence() {
        let d = k3();
        let ctx = SkeletalContext::new(&d).unwrap();
        let cong = ctx.congruence(ctx.full_ideal());
        for c in 0..cong.class_count() {
            let p = partial_of_class(&ctx, &cong, c);
            assert_eq!(p.present, d.all_arcs());
            assert_eq!(p.reversed, ctx.ar.reversed(cong.minima[c] as usize));
        }
    }

    #[test]
    fn quotient_isomorphic_to_partial_reorientation_order() {
        for d in [k3(), t1()] {
            let ctx = SkeletalContext::new(&d).unwrap();
            ctx.for_each_ideal(|mask| {
                let cong = ctx.congruence(RopeIdeal(mask));
                let q = cong.quotient_poset(&ctx);
                let partials: Vec<PartialReorientation> = (0..cong.class_count())
                    .map(|c| partial_of_class(&ctx, &cong, c))
                    .collect();
                for a in 0..partials.len() {
                    for b in 0..partials.len() {
                        assert_eq!(q.leq(a, b), partials[a].leq(&partials[b]));
                    }
                }
                // degree in the quotient Hasse = arcs of the reduced partial
                let graph = cong.quotient_cover_graph(&ctx);
                for (c, p) in partials.iter().enumerate() {
                    assert_eq!(graph[c].len(), p.reduced(&d).present.len());
                }
            });
        }
    }

    #[test]
    fn sylvester_class_partials_on_k3() {
        let d = k3();
        let ctx = SkeletalContext::new(&d).unwrap();
        let cong = ctx.congruence(ctx.sylvester_ideal());
        let sizes = {
            let mut s = vec![0usize; cong.class_count()];
            for &c in &cong.class_of {
                s[c as usize] += 1;
            }
            s
        };
        for c in 0..cong.class_count() {
            let p = partial_of_class(&ctx, &cong, c);
            // the two-element class fixes two arcs, singletons fix all three
            assert_eq!(p.present.len(), if sizes[c] == 2 { 2 } else { 3 });
        }
    }

    #[test]
    fn coherent_interval_criterion_matches_enumeration() {
        for d in [k3(), t1()] {
            let ctx = SkeletalContext::new(&d).unwrap();
            for (down, up) in [
                (VertexSet::EMPTY, VertexSet::EMPTY),
                (d.all_vertices(), VertexSet::EMPTY),
                (VertexSet::EMPTY, d.all_vertices()),
                (d.all_vertices(), d.all_vertices()),
            ] {
                let cong = ctx.congruence(ctx.coherent_ideal(down, up));
                let mut in_family = std::collections::HashSet::new();
                for lo in 0..cong.class_count() {
                    for hi in 0..cong.class_count() {
                        if let Ok(p) = partial_of_interval(&ctx, &cong, lo, hi) {
                            in_family.insert(p);
                        }
                    }
                }
                // quantify over all extendable partial reorientations
                for present in 0u64..1 << d.arc_count() {
                    let present = ArcSet(present);
                    for sub in 0u32..1 << present.len() {
                        let mut reversed = ArcSet::EMPTY;
                        for (k, id) in present.iter().enumerate() {
                            if sub >> k & 1 == 1 {
                                reversed.insert(id);
                            }
                        }
                        let p = PartialReorientation { present, reversed };
                        let extendable = (0..ctx.ar.len())
                            .any(|x| ctx.ar.reversed(x).intersection(present) == reversed);
                        if !extendable {
                            continue;
                        }
                        assert_eq!(
                            coherent_interval_check(&d, &p, down, up),
                            in_family.contains(&p),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn extension_and_restriction_of_congruences() {
        let d = t1();
        let ctx = SkeletalContext::new(&d).unwrap();
        // identity transport
        let idmap = RestrictionMap::new(&d, &d).unwrap();
        let ideal = ctx.sylvester_ideal();
        assert_eq!(extend_ideal(&idmap, &ctx, &ctx, ideal).unwrap(), ideal);
        assert_eq!(restrict_ideal(&idmap, &ctx, &ctx, ideal).unwrap(), ideal);

        // restrict to the triangle on {0,1,2}: strongly pathful in t1
        let tri = Dag::new(4, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let map = RestrictionMap::new(&d, &tri).unwrap();
        assert!(map.is_strongly_pathful());
        let ctx_tri = SkeletalContext::new(&tri).unwrap();
        let restricted = restrict_ideal(&map, &ctx, &ctx_tri, ctx.sylvester_ideal()).unwrap();
        assert_eq!(restricted.0, ctx_tri.sylvester_ideal().0);

        // restriction classes = classes of embedded elements
        let cong = ctx.congruence(ctx.sylvester_ideal());
        let cong_tri = ctx_tri.congruence(restricted);
        for a in 0..ctx_tri.ar.len() {
            for b in 0..ctx_tri.ar.len() {
                let ea = ctx.ar.index_of(map.embed(ctx_tri.ar.reversed(a))).unwrap();
                let eb = ctx.ar.index_of(map.embed(ctx_tri.ar.reversed(b))).unwrap();
                assert_eq!(
                    cong_tri.class_of[a] == cong_tri.class_of[b],
                    cong.class_of[ea] == cong.class_of[eb]
                );
            }
        }

        // extension classes = fibers of subgraph classes
        let extended = extend_ideal(&map, &ctx, &ctx_tri, ctx_tri.sylvester_ideal()).unwrap();
        let cong_ext = ctx.congruence(extended);
        for a in 0..ctx.ar.len() {
            for b in 0..ctx.ar.len() {
                let ra = ctx_tri
                    .ar
                    .index_of(map.restrict(ctx.ar.reversed(a)))
                    .unwrap();
                let rb = ctx_tri
                    .ar
                    .index_of(map.restrict(ctx.ar.reversed(b)))
                    .unwrap();
                assert_eq!(
                    cong_ext.class_of[a] == cong_ext.class_of[b],
                    cong_tri.class_of[ra] == cong_tri.class_of[rb]
                );
            }
        }
    }

    #[test]
    fn doubling_sequences() {
        // forest: no arcs beyond the reduction
        assert!(doubling_sequence(&Dag::path(3)).unwrap().is_empty());

        // triangle: one step, the doubled set is a 2-element interval
        let steps = doubling_sequence(&k3()).unwrap();
        assert_eq!(steps.len(), 1);
        let s = &steps[0];
        assert_eq!(s.added_arc, (0, 2));
        assert_eq!(s.doubled_set.len(), 2);
        assert!(s.set_is_order_convex);
        assert!(s.doubling_isomorphic);
        assert!(s.splits_into_intervals);

        // oriented 4-cycle: convex but not an interval partition
        let steps = doubling_sequence(&c4()).unwrap();
        assert_eq!(steps.len(), 1);
        let s = &steps[0];
        assert!(s.set_is_order_convex);
        assert!(s.doubling_isomorphic);
        assert!(!s.splits_into_intervals);

        // not a lattice: refused
        assert!(matches!(doubling_sequence(&dia()), Err(Error::NotALattice)));
    }

    #[test]
    fn hamiltonian_facts() {
        // boolean lattice on 3 atoms: Gray code cycle
        let ctx = SkeletalContext::new(&Dag::path(4)).unwrap();
        let cong = ctx.congruence(ctx.full_ideal());
        assert!(hamiltonian_cycle(&cong.quotient_cover_graph(&ctx)).is_some());

        // the oriented 4-cycle's flip graph has no Hamiltonian path
        let ar = ArLattice::new(&c4()).unwrap();
        let poset = ar.as_poset();
        assert!(crate::poset::hamiltonian_path(&poset.cover_graph()).is_none());
    }

    #[test]
    fn obstruction_patterns_are_stable() {
        // the two irregular acyclic orientations of K4 minus an edge
        let tamari = tamari_obstruction_keys();
        assert_eq!(tamari.len(), 2);
        // the unique orientation with diverging Cambrian sizes
        let cambrian = cambrian_obstruction_keys();
        assert_eq!(cambrian.len(), 1);
        for key in tamari.iter().chain(&cambrian) {
            assert_eq!(key.len(), 5); // all three live on K4 minus an edge
        }
        // the Cambrian obstruction has a regular Tamari quotient
        assert!(!tamari.contains(&cambrian[0]));
    }

    #[test]
    fn harness_equivalences_on_four_vertices() {
        let tamari = tamari_obstruction_keys();
        let cambrian = cambrian_obstruction_keys();
        for d in crate::corpus::dags_up_to(4) {
            if !d.is_skeletal() {
                continue;
            }
            let report = harness_report(&d).unwrap();
            assert_eq!(report.tamari_regular, !has_induced_pattern(&d, &tamari));
            assert_eq!(
                report.tamari_class_reductions_are_forests,
                report.tamari_regular
            );
            assert_eq!(
                report.cambrian_counts_equal,
                !has_induced_pattern(&d, &cambrian)
            );
            assert_eq!(
                report.cambrian_graphs_isomorphic,
                report.cambrian_counts_equal
            );
        }
    }
}
