//! Directed acyclic graphs with canonically indexed vertices and arcs.
//!
//! Vertices are dense `0..n` indices (1-based only in I/O). The arc list is
//! kept sorted lexicographically by `(tail, head)` so equal graphs serialize
//! identically, and every arc subset is addressed through [`ArcSet`] bitsets
//! by arc position.

use crate::bits::{ArcSet, VertexSet};
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    arcs: Vec<(usize, usize)>,
    arc_ids: HashMap<(usize, usize), usize>,
    /// Undirected adjacency masks.
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Dag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Dag(n={}, arcs={:?})", self.n, self.arcs)
    }
}

impl Dag {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Dag> {
        if n > 32 {
            return Err(Error::InvalidGraph(format!("too many vertices: {n} > 32")));
        }
        arcs.sort_unstable();
        if arcs.len() > 64 {
            return Err(Error::InvalidGraph(format!(
                "too many arcs: {} > 64",
                arcs.len()
            )));
        }
        let mut arc_ids = HashMap::new();
        let mut adj = vec![VertexSet::EMPTY; n];
        for (i, &(u, v)) in arcs.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "arc ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if arc_ids.insert((u, v), i).is_some() {
                return Err(Error::InvalidGraph(format!("repeated arc ({u}, {v})")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        for &(u, v) in &arcs {
            if arc_ids.contains_key(&(v, u)) {
                return Err(Error::InvalidGraph(format!(
                    "antiparallel arcs between {u} and {v}"
                )));
            }
        }
        let dag = Dag {
            n,
            arcs,
            arc_ids,
            adj,
        };
        if !dag.is_acyclic_reorientation(ArcSet::EMPTY) {
            return Err(Error::InvalidGraph(
                "arc relation has a directed cycle".into(),
            ));
        }
        Ok(dag)
    }

    /// Increasing tournament on `n` vertices: all arcs `(i, j)` with `i < j`.
    pub fn tournament(n: usize) -> Dag {
        let arcs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Dag::new(n, arcs).expect("tournament is a valid dag")
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn path(n: usize) -> Dag {
        let arcs = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Dag::new(n, arcs).expect("path is a valid dag")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> (usize, usize) {
        self.arcs[id]
    }

    pub fn arc_id(&self, u: usize, v: usize) -> Option<usize> {
        self.arc_ids.get(&(u, v)).copied()
    }

    /// True if `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn all_arcs(&self) -> ArcSet {
        ArcSet::full(self.arcs.len())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Endpoints of arc `id` as oriented by the reorientation `reversed`.
    pub fn oriented_arc(&self, id: usize, reversed: ArcSet) -> (usize, usize) {
        let (u, v) = self.arcs[id];
        if reversed.contains(id) {
            (v, u)
        } else {
            (u, v)
        }
    }

    /// Out-neighbor masks of the reorientation given by `reversed`.
    pub fn out_masks(&self, reversed: ArcSet) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::EMPTY; self.n];
        for id in 0..self.arcs.len() {
            let (t, h) = self.oriented_arc(id, reversed);
            out[t].insert(h);
        }
        out
    }

    pub fn is_acyclic_reorientation(&self, reversed: ArcSet) -> bool {
        self.reach(reversed).is_some()
    }

    /// Strict reachability (`reach[v]` = endpoints of nonempty directed paths
    /// from `v`) in the reorientation, or `None` if it has a directed cycle.
    pub fn reach(&self, reversed: ArcSet) -> Option<Vec<VertexSet>> {
        let out = self.out_masks(reversed);
        self.reach_from_masks(&out)
    }

    fn reach_from_masks(&self, out: &[VertexSet]) -> Option<Vec<VertexSet>> {
        // Kahn order, then accumulate reach sets in reverse.
        let n = self.n;
        let mut indeg = vec![0usize; n];
        for v in 0..n {
            for w in out[v].iter() {
                indeg[w] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            topo.push(v);
            for w in out[v].iter() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if topo.len() != n {
            return None;
        }
        let mut reach = vec![VertexSet::EMPTY; n];
        for &v in topo.iter().rev() {
            let mut r = VertexSet::EMPTY;
            for w in out[v].iter() {
                r.insert(w);
                r = r.union(reach[w]);
            }
            reach[v] = r;
        }
        Some(reach)
    }

    /// Whether flipping arc `id` in the acyclic reorientation `reversed`
    /// keeps it acyclic. Incremental: a flip of the arc oriented `t -> h`
    /// creates a cycle iff another directed path `t -> h` survives.
    pub fn flip_keeps_acyclic(&self, reversed: ArcSet, id: usize) -> bool {
        let (t, h) = self.oriented_arc(id, reversed);
        let mut seen = VertexSet::singleton(t);
        let mut stack = vec![t];
        let out = self.out_masks(reversed);
        while let Some(v) = stack.pop() {
            for w in out[v].iter() {
                if v == t && w == h {
                    continue; // the flipped arc itself
                }
                if w == h {
                    return false;
                }
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        true
    }

    /// Arc ids lying in the transitive reduction of the reorientation.
    pub fn reduction_arcs(&self, reversed: ArcSet) -> ArcSet {
        let reach = self.reach(reversed).expect("reorientation must be acyclic");
        let out = self.out_masks(reversed);
        let mut red = ArcSet::EMPTY;
        'arcs: for id in 0..self.arcs.len() {
            let (t, h) = self.oriented_arc(id, reversed);
            for w in out[t].iter() {
                if w != h && reach[w].contains(h) {
                    continue 'arcs; // path of length >= 2 from t to h
                }
            }
            red.insert(id);
        }
        red
    }

    /// The transitive closure as a new `Dag` on the same vertices.
    pub fn transitive_closure(&self) -> Dag {
        let reach = self.reach(ArcSet::EMPTY).expect("dag is acyclic");
        let mut arcs = Vec::new();
        for u in 0..self.n {
            for v in reach[u].iter() {
                arcs.push((u, v));
            }
        }
        Dag::new(self.n, arcs).expect("closure of a dag is a dag")
    }

    /// The transitive reduction as a new `Dag` on the same vertices.
    pub fn transitive_reduction(&self) -> Dag {
        let red = self.reduction_arcs(ArcSet::EMPTY);
        let arcs = red.iter().map(|id| self.arcs[id]).collect();
        Dag::new(self.n, arcs).expect("reduction of a dag is a dag")
    }

    /// Vertices on directed paths joining the endpoints of arc `id`
    /// (endpoints included).
    pub fn transitive_support(&self, id: usize) -> VertexSet {
        let (u, v) = self.arcs[id];
        let reach = self.reach(ArcSet::EMPTY).expect("dag is acyclic");
        let mut s = VertexSet::from_iter([u, v]);
        for w in reach[u].iter() {
            if reach[w].contains(v) {
                s.insert(w);
            }
        }
        s
    }

    pub fn transitive_support_of(&self, u: usize, v: usize) -> Result<VertexSet> {
        match self.arc_id(u, v) {
            Some(id) => Ok(self.transitive_support(id)),
            None => Err(Error::ArcNotInGraph(u, v)),
        }
    }

    /// Interior of arc `id`: vertices `w` with both `(u, w)` and `(w, v)` in
    /// the graph. Coincides with `transitive_support \ {u, v}` when the graph
    /// is filled, and is the set partitioned by ropes in general.
    pub fn arc_interior(&self, id: usize) -> VertexSet {
        let (u, v) = self.arcs[id];
        let mut s = VertexSet::EMPTY;
        for w in 0..self.n {
            if w != u && w != v && self.arc_id(u, w).is_some() && self.arc_id(w, v).is_some() {
                s.insert(w);
            }
        }
        s
    }

    /// The subgraph induced by `keep`, with the dense relabeling map
    /// (old index of each new vertex, in increasing order).
    pub fn induced(&self, keep: VertexSet) -> (Dag, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_of[u], new_of[v]))
            .collect();
        (
            Dag::new(old.len(), arcs).expect("induced subgraph of a dag is a dag"),
            old,
        )
    }

    pub fn is_connected_subset(&self, s: VertexSet) -> bool {
        if s.is_empty() {
            return false;
        }
        let start = s.iter().next().unwrap();
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.adj[v].intersection(s).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen == s
    }

    /// Connected components of the underlying undirected graph.
    pub fn undirected_components(&self) -> Vec<VertexSet> {
        let mut comps = Vec::new();
        let mut assigned = VertexSet::EMPTY;
        for v in 0..self.n {
            if assigned.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for w in self.adj[x].iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            assigned = assigned.union(comp);
            comps.push(comp);
        }
        comps
    }

    fn reduction_is_forest(&self) -> bool {
        let red = self.reduction_arcs(ArcSet::EMPTY);
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for id in red.iter() {
            let (u, v) = self.arcs[id];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }

    /// Vertebrate: the transitive reduction of every induced subgraph is a
    /// forest. Enumerates connected vertex subsets only; a cycle in the
    /// reduction of an induced subgraph lives inside one of its connected
    /// pieces, and those pieces are themselves induced subgraphs.
    pub fn is_vertebrate(&self) -> bool {
        for mask in 0u32..1 << self.n {
            let s = VertexSet(mask);
            if s.len() < 3 || !self.is_connected_subset(s) {
                continue;
            }
            if !self.induced(s).0.reduction_is_forest() {
                return false;
            }
        }
        true
    }

    /// Unpruned fallback of [`is_vertebrate`](Self::is_vertebrate): every subset, full check.
    pub fn is_vertebrate_naive(&self) -> bool {
        (0u32..1 << self.n).all(|mask| self.induced(VertexSet(mask)).0.reduction_is_forest())
    }

    /// Filled: the transitive support of every arc induces a tournament.
    pub fn is_filled(&self) -> bool {
        (0..self.arcs.len()).all(|id| self.induces_tournament(self.transitive_support(id)))
    }

    pub fn induces_tournament(&self, s: VertexSet) -> bool {
        let vs: Vec<usize> = s.iter().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_skeletal(&self) -> bool {
        self.is_vertebrate() && self.is_filled()
    }

    pub fn is_forest(&self) -> bool {
        self.reduction_is_forest() && self.reduction_arcs(ArcSet::EMPTY) == self.all_arcs()
    }

    /// Chordal: no induced undirected cycle of length at least 4.
    pub fn is_chordal(&self) -> bool {
        for mask in 0u32..1 << self.n {
            let s = VertexSet(mask);
            if s.len() >= 4 && self.induces_cycle_graph(s) {
                return false;
            }
        }
        true
    }

    fn induces_cycle_graph(&self, s: VertexSet) -> bool {
        if !self.is_connected_subset(s) {
            return false;
        }
        s.iter().all(|v| self.adj[v].intersection(s).len() == 2)
    }

    /// Chordful (block graph): every undirected cycle induces a clique.
    pub fn is_chordful(&self) -> bool {
        for cycle in self.undirected_cycles() {
            if !self.induces_tournament(cycle) {
                return false;
            }
        }
        true
    }

    /// Vertex sets of all simple undirected cycles (length >= 3).
    fn undirected_cycles(&self) -> Vec<VertexSet> {
        let mut cycles = Vec::new();
        // Each cycle reported once: smallest vertex as anchor, second visited
        // vertex smaller than the last one.
        for s in 0..self.n {
            let mut path = vec![s];
            let mut on_path = VertexSet::singleton(s);
            self.cycle_dfs(s, s, &mut path, &mut on_path, &mut cycles);
        }
        cycles
    }

    fn cycle_dfs(
        &self,
        anchor: usize,
        v: usize,
        path: &mut Vec<usize>,
        on_path: &mut VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        for w in self.adj[v].iter() {
            if w == anchor && path.len() >= 3 && path[1] < path[path.len() - 1] {
                out.push(*on_path);
            } else if w > anchor && !on_path.contains(w) {
                path.push(w);
                on_path.insert(w);
                self.cycle_dfs(anchor, w, path, on_path, out);
                path.pop();
                on_path.remove(w);
            }
        }
    }

    /// All vertex subsets of size >= 2 inducing a tournament, in increasing
    /// bitmask order.
    pub fn cliques(&self) -> Vec<VertexSet> {
        (0u32..1 << self.n)
            .map(VertexSet)
            .filter(|s| s.len() >= 2 && self.induces_tournament(*s))
            .collect()
    }

    /// Nonempty connected subsets whose complement within their connected
    /// component is nonempty and connected. These index the rays of the
    /// graphical fan and the facets of the graphical zonotope.
    pub fn biconnected_subsets(&self) -> Vec<VertexSet> {
        let comps = self.undirected_components();
        (0u32..1 << self.n)
            .map(VertexSet)
            .filter(|&s| {
                if s.is_empty() || !self.is_connected_subset(s) {
                    return false;
                }
                let comp = *comps
                    .iter()
                    .find(|c| s.is_subset(**c))
                    .expect("connected set lies in one component");
                let rest = comp.difference(s);
                !rest.is_empty() && self.is_connected_subset(rest)
            })
            .collect()
    }

    /// Number of acyclic orientations of the underlying undirected graph,
    /// by deletion-contraction. This is the exact size of the acyclic
    /// reorientation poset, used by the enumeration size guard.
    pub fn acyclic_orientation_count(&self) -> u128 {
        self.acyclic_orientation_count_budgeted(u64::MAX)
            .expect("unbounded budget")
    }

    /// As [`acyclic_orientation_count`](Self::acyclic_orientation_count) but
    /// gives up once the recursion exceeds `budget` nodes.
    pub fn acyclic_orientation_count_budgeted(&self, budget: u64) -> Option<u128> {
        fn count(edges: &mut Vec<(usize, usize)>, budget: &mut u64) -> Option<u128> {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let Some(&(u, v)) = edges.last() else {
                return Some(1);
            };
            edges.pop();
            // deleted
            let a = count(edges, budget);
            // contracted: merge v into u, dedupe
            let mut merged: Vec<(usize, usize)> = edges
                .iter()
                .filter_map(|&(x, y)| {
                    let x = if x == v { u } else { x };
                    let y = if y == v { u } else { y };
                    if x == y {
                        None
                    } else {
                        Some((x.min(y), x.max(y)))
                    }
                })
                .collect();
            merged.sort_unstable();
            merged.dedup();
            let b = count(&mut merged, budget);
            edges.push((u, v));
            Some(a? + b?)
        }
        let mut edges: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        let mut budget = budget;
        count(&mut edges, &mut budget)
    }

    /// Lexicographically minimal arc list over all vertex relabelings;
    /// two dags are isomorphic iff their canonical keys agree.
    pub fn canonical_key(&self) -> Vec<(usize, usize)> {
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perm: Vec<usize> = (0..self.n).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut relabeled: Vec<(usize, usize)> =
                self.arcs.iter().map(|&(u, v)| (p[u], p[v])).collect();
            relabeled.sort_unstable();
            if best.as_ref().is_none_or(|b| relabeled < *b) {
                best = Some(relabeled);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
pub(crate) mod testgraphs {
    use super::Dag;

    pub fn k3() -> Dag {
        Dag::tournament(3)
    }

    /// Oriented 4-cycle: 0->1->2->3 plus 0->3.
    pub fn c4() -> Dag {
        Dag::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    /// Diamond: 0->1, 0->2, 1->3, 2->3. Not vertebrate.
    pub fn dia() -> Dag {
        Dag::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Triangle with a pendant arc 2->3.
    pub fn t1() -> Dag {
        Dag::new(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }
}
