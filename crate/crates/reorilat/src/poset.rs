//! Explicit finite posets: Hasse diagrams, lattice operations, congruence
//! closure, convex doubling, and isomorphism tests.
//!
//! Everything here is brute force on purpose. These are the definitional
//! oracles that the structural characterizations elsewhere in the crate are
//! checked against, so they stay as close to the textbook definitions as
//! possible.

use crate::bits::BitMatrix;

#[derive(Clone, Debug)]
pub struct FinitePoset {
    leq: BitMatrix,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Builds the poset from the reflexive-transitive closure of `relations`.
    /// The input may be any generating relation; covers are recomputed as the
    /// transitive reduction.
    pub fn from_relations(n: usize, relations: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut leq = BitMatrix::new(n);
        for (a, b) in relations {
            leq.set(a, b);
        }
        leq.transitive_close();
        Self::from_leq(leq)
    }

    pub fn from_leq(leq: BitMatrix) -> Self {
        let n = leq.size();
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for a in 0..n {
            'next: for b in 0..n {
                if a == b || !leq.get(a, b) {
                    continue;
                }
                debug_assert!(!leq.get(b, a), "order relation must be antisymmetric");
                for c in 0..n {
                    if c != a && c != b && leq.get(a, c) && leq.get(c, b) {
                        continue 'next;
                    }
                }
                up_covers[a].push(b);
                down_covers[b].push(a);
            }
        }
        FinitePoset {
            leq,
            up_covers,
            down_covers,
        }
    }

    pub fn len(&self) -> usize {
        self.leq.size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn up_covers(&self, a: usize) -> &[usize] {
        &self.up_covers[a]
    }

    pub fn down_covers(&self, a: usize) -> &[usize] {
        &self.down_covers[a]
    }

    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.up_covers[a].iter().map(move |&b| (a, b)))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.down_covers[a].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.up_covers[a].is_empty())
            .collect()
    }

    /// Least upper bound if it exists (unique minimal common upper bound
    /// that is below every other common upper bound).
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in 0..self.len() {
            if self.leq.get(a, c) && self.leq.get(b, c) {
                match best {
                    None => best = Some(c),
                    Some(m) if self.leq.get(c, m) => best = Some(c),
                    _ => {}
                }
            }
        }
        let m = best?;
        for c in 0..self.len() {
            if self.leq.get(a, c) && self.leq.get(b, c) && !self.leq.get(m, c) {
                return None;
            }
        }
        Some(m)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in 0..self.len() {
            if self.leq.get(c, a) && self.leq.get(c, b) {
                match best {
                    None => best = Some(c),
                    Some(m) if self.leq.get(m, c) => best = Some(c),
                    _ => {}
                }
            }
        }
        let m = best?;
        for c in 0..self.len() {
            if self.leq.get(c, a) && self.leq.get(c, b) && !self.leq.get(c, m) {
                return None;
            }
        }
        Some(m)
    }

    pub fn is_lattice(&self) -> bool {
        if self.len() == 0 {
            return false;
        }
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.join(a, b).is_none() || self.meet(a, b).is_none() {
                    return false;
                }
            }
        }
        true
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.down_covers[a].len() == 1)
            .collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.up_covers[a].len() == 1)
            .collect()
    }

    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq.get(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn interval_elements(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.leq.get(lo, x) && self.leq.get(x, hi))
            .collect()
    }

    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        let mut leq = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if self.leq.get(b, a) {
                    leq.set(a, b);
                }
            }
        }
        Self::from_leq(leq)
    }

    /// Undirected cover-graph adjacency lists.
    pub fn cover_graph(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (a, b) in self.cover_pairs() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        adj
    }

    /// Day's doubling of an arbitrary subset `x`. Elements outside `x` keep
    /// one copy; elements of `x` are split into a lower copy and an upper
    /// copy. Returns the doubled poset together with, for each new index,
    /// `(old index, copy)` where `copy` is 0, 1, or `None` for unsplit.
    pub fn doubling(&self, x: &[bool]) -> (FinitePoset, Vec<(usize, Option<usize>)>) {
        let mut labels = Vec::new();
        for (a, &in_x) in x.iter().enumerate() {
            if in_x {
                labels.push((a, Some(0)));
                labels.push((a, Some(1)));
            } else {
                labels.push((a, None));
            }
        }
        let m = labels.len();
        let mut leq = BitMatrix::new(m);
        for (i, &(a, ca)) in labels.iter().enumerate() {
            for (j, &(b, cb)) in labels.iter().enumerate() {
                let base = self.leq.get(a, b);
                let ok = match (ca, cb) {
                    (None, None) | (Some(_), None) | (None, Some(_)) => base,
                    (Some(i0), Some(j0)) => base && i0 <= j0,
                };
                if ok {
                    leq.set(i, j);
                }
            }
        }
        (Self::from_leq(leq), labels)
    }

    /// Order isomorphism test (equivalently, directed Hasse diagram
    /// isomorphism).
    pub fn isomorphic(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let a: Vec<Vec<usize>> = (0..self.len()).map(|v| self.up_covers[v].clone()).collect();
        let b: Vec<Vec<usize>> = (0..other.len())
            .map(|v| other.up_covers[v].clone())
            .collect();
        digraph_isomorphic(&a, &b)
    }
}

// ---------------------------------------------------------------------------
// Lattice tables and congruence closure
// ---------------------------------------------------------------------------

/// Precomputed join/meet tables of a finite lattice, plus the congruence
/// machinery built on them.
pub struct LatticeTables {
    n: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl LatticeTables {
    /// Fails (returns `None`) when the poset is not a lattice.
    pub fn new(poset: &FinitePoset) -> Option<LatticeTables> {
        let n = poset.len();
        if n == 0 {
            return None;
        }
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let j = poset.join(a, b)? as u32;
                let m = poset.meet(a, b)? as u32;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        Some(LatticeTables { n, join, meet })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    /// Smallest congruence merging every given pair: union-find closed under
    /// `x = y  =>  x v z = y v z` and `x ^ z = y ^ z`.
    pub fn congruence_closure(&self, pairs: &[(usize, usize)]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut work: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((x, y)) = work.pop() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx == ry {
                continue;
            }
            parent[rx] = ry;
            for z in 0..self.n {
                work.push((self.join(x, z), self.join(y, z)));
                work.push((self.meet(x, z), self.meet(y, z)));
            }
        }
        canonical_partition(&mut parent)
    }

    /// All congruences, as canonical class-id vectors. Generated as joins of
    /// the congruences collapsing one cover each; for finite lattices every
    /// congruence is such a join.
    pub fn all_congruences(&self, poset: &FinitePoset) -> Vec<Vec<usize>> {
        let generators: Vec<Vec<usize>> = poset
            .cover_pairs()
            .map(|(a, b)| self.congruence_closure(&[(a, b)]))
            .collect();
        let discrete = canonical_partition(&mut (0..self.n).collect::<Vec<_>>());
        let mut seen = std::collections::HashSet::new();
        seen.insert(discrete.clone());
        let mut queue = vec![discrete];
        while let Some(part) = queue.pop() {
            for g in &generators {
                let merged = self.join_partitions(&part, g);
                if seen.insert(merged.clone()) {
                    queue.push(merged);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn join_partitions(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut pairs = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if a[x] == a[y] || b[x] == b[y] {
                    pairs.push((x, y));
                }
            }
        }
        self.congruence_closure(&pairs)
    }

    // -- definitional lattice property oracles --

    pub fn is_distributive(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), self.join(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// For a cover `x < y`, the set `{z : x v z = y}` must have a unique
    /// minimal element, and dually.
    pub fn is_semidistributive(&self, poset: &FinitePoset) -> bool {
        for (x, y) in poset.cover_pairs() {
            if self.k_join(poset, x, y).is_none() || self.k_meet(poset, x, y).is_none() {
                return false;
            }
        }
        true
    }

    /// Unique minimal `z` with `x v z = y`, for a cover `x < y`.
    pub fn k_join(&self, poset: &FinitePoset, x: usize, y: usize) -> Option<usize> {
        let members: Vec<usize> = (0..self.n).filter(|&z| self.join(x, z) == y).collect();
        let mins: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&z| members.iter().all(|&w| w == z || !poset.leq(w, z)))
            .collect();
        let unique = *mins.first()?;
        if mins.len() == 1 && members.iter().all(|&w| poset.leq(unique, w)) {
            Some(unique)
        } else {
            None
        }
    }

    /// Unique maximal `z` with `z ^ y = x`, for a cover `x < y`.
    pub fn k_meet(&self, poset: &FinitePoset, x: usize, y: usize) -> Option<usize> {
        let members: Vec<usize> = (0..self.n).filter(|&z| self.meet(y, z) == x).collect();
        let maxes: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&z| members.iter().all(|&w| w == z || !poset.leq(z, w)))
            .collect();
        let unique = *maxes.first()?;
        if maxes.len() == 1 && members.iter().all(|&w| poset.leq(w, unique)) {
            Some(unique)
        } else {
            None
        }
    }

    pub fn is_congruence_normal(&self, poset: &FinitePoset) -> bool {
        let ji_cons: Vec<(usize, Vec<usize>)> = poset
            .join_irreducibles()
            .into_iter()
            .map(|j| (j, self.congruence_closure(&[(poset.down_covers(j)[0], j)])))
            .collect();
        let mi_cons: Vec<(usize, Vec<usize>)> = poset
            .meet_irreducibles()
            .into_iter()
            .map(|m| (m, self.congruence_closure(&[(m, poset.up_covers(m)[0])])))
            .collect();
        for (j, cj) in &ji_cons {
            for (m, cm) in &mi_cons {
                if poset.leq(*j, *m) && cj == cm {
                    return false;
                }
            }
        }
        true
    }

    /// Congruence uniform iff `j -> con(j_*, j)` is injective on join
    /// irreducibles and dually; the common value sets are always exactly the
    /// irreducible congruences, so injectivity is the whole condition.
    pub fn is_congruence_uniform(&self, poset: &FinitePoset) -> bool {
        let ji: Vec<Vec<usize>> = poset
            .join_irreducibles()
            .into_iter()
            .map(|j| self.congruence_closure(&[(poset.down_covers(j)[0], j)]))
            .collect();
        let mi: Vec<Vec<usize>> = poset
            .meet_irreducibles()
            .into_iter()
            .map(|m| self.congruence_closure(&[(m, poset.up_covers(m)[0])]))
            .collect();
        let distinct = |v: &[Vec<usize>]| {
            let mut s = std::collections::HashSet::new();
            v.iter().all(|p| s.insert(p.clone()))
        };
        distinct(&ji) && distinct(&mi)
    }
}

/// Renumbers union-find parents into class ids by first occurrence.
fn canonical_partition(parent: &mut [usize]) -> Vec<usize> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let n = parent.len();
    let mut ids = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for x in 0..n {
        let r = find(parent, x);
        if ids[r] == usize::MAX {
            ids[r] = next;
            next += 1;
        }
        out[x] = ids[r];
    }
    out
}

// ---------------------------------------------------------------------------
// Graph isomorphism (small instances)
// ---------------------------------------------------------------------------

/// Directed graph isomorphism by refinement-colored backtracking.
pub fn digraph_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    iso_search(a, b, true)
}

/// Undirected graph isomorphism; adjacency lists must be symmetric.
pub fn graph_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    iso_search(a, b, false)
}

fn iso_search(a: &[Vec<usize>], b: &[Vec<usize>], directed: bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    let (in_a, in_b) = (reverse_adj(a), reverse_adj(b));
    let ca = wl_colors(a, &in_a, directed);
    let cb = wl_colors(b, &in_b, directed);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // adjacency matrices for O(1) checks
    let adj = |g: &[Vec<usize>], n: usize| {
        let mut m = BitMatrix::new(n);
        for (u, row) in g.iter().enumerate() {
            for &v in row {
                m.set(u, v);
            }
        }
        m
    };
    let (ma, mb) = (adj(a, n), adj(b, n));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // match vertices in order of rarest color first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| {
        (
            ca.iter().filter(|&&c| c == ca[v]).count(),
            std::cmp::Reverse(a[v].len()),
        )
    });
    fn rec(
        idx: usize,
        order: &[usize],
        ca: &[u64],
        cb: &[u64],
        ma: &BitMatrix,
        mb: &BitMatrix,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let u = order[idx];
        for v in 0..cb.len() {
            if used[v] || ca[u] != cb[v] {
                continue;
            }
            let consistent = order[..idx].iter().all(|&w| {
                let mw = map[w];
                ma.get(u, w) == mb.get(v, mw) && ma.get(w, u) == mb.get(mw, v)
            });
            if consistent {
                map[u] = v;
                used[v] = true;
                if rec(idx + 1, order, ca, cb, ma, mb, map, used) {
                    return true;
                }
                used[v] = false;
                map[u] = usize::MAX;
            }
        }
        false
    }
    rec(0, &order, &ca, &cb, &ma, &mb, &mut map, &mut used)
}

fn reverse_adj(g: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); g.len()];
    for (u, row) in g.iter().enumerate() {
        for &v in row {
            rev[v].push(u);
        }
    }
    rev
}

/// A few rounds of Weisfeiler-Leman color refinement; returns stable hashes.
fn wl_colors(out: &[Vec<usize>], inc: &[Vec<usize>], directed: bool) -> Vec<u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let n = out.len();
    let mut colors: Vec<u64> = (0..n)
        .map(|v| {
            let mut h = DefaultHasher::new();
            (out[v].len(), if directed { inc[v].len() } else { 0 }).hash(&mut h);
            h.finish()
        })
        .collect();
    for _ in 0..3 {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut outs: Vec<u64> = out[v].iter().map(|&w| colors[w]).collect();
            outs.sort_unstable();
            let mut ins: Vec<u64> = if directed {
                inc[v].iter().map(|&w| colors[w]).collect()
            } else {
                Vec::new()
            };
            ins.sort_unstable();
            let mut h = DefaultHasher::new();
            (colors[v], outs, ins).hash(&mut h);
            next.push(h.finish());
        }
        colors = next;
    }
    colors
}

// ---------------------------------------------------------------------------
// Hamiltonian search on undirected graphs
// ---------------------------------------------------------------------------

/// Hamiltonian cycle search: a deterministic rotation pass finds cycles
/// quickly on the near-regular quotient graphs; exhaustive backtracking
/// with degree, connectivity, and forced-move pruning settles whatever the
/// rotations miss (in particular, absence). Graphs on one or two vertices
/// are treated as degenerate cycles (their cover graphs are a point or a
/// segment).
pub fn hamiltonian_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    if n == 2 {
        return adj[0].contains(&1).then(|| vec![0, 1]);
    }
    if n <= 128 {
        if let Some(cycle) = posa_cycle(adj) {
            return Some(cycle);
        }
    }
    let mut search = HamSearch::new(adj, true, 0);
    search.run().then_some(search.path)
}

/// Rotation search: always extend by the smallest unvisited neighbor;
/// when stuck, rotate the path end to the first endpoint not yet tried
/// since the last extension, flipping the whole path when the current end
/// runs out of pivots. Restarted from a few starting vertices.
fn posa_cycle(neighbors: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = neighbors.len();
    let adj: Vec<u128> = neighbors
        .iter()
        .map(|row| row.iter().fold(0u128, |m, &w| m | 1 << w))
        .collect();
    for start in 0..n.min(8) {
        if let Some(cycle) = posa_from(&adj, n, start) {
            return Some(cycle);
        }
    }
    None
}

fn posa_from(adj: &[u128], n: usize, start: usize) -> Option<Vec<usize>> {
    let mut path = vec![start];
    let mut on = 1u128 << start;
    let mut pos = vec![0usize; n];
    let mut tried: u128 = 0;
    let mut flipped = false;
    let budget = 60 * n * n;
    for _ in 0..budget {
        let last = *path.last().unwrap();
        let extension = adj[last] & !on;
        if path.len() < n && extension != 0 {
            let w = extension.trailing_zeros() as usize;
            pos[w] = path.len();
            path.push(w);
            on |= 1 << w;
            tried = 0;
            flipped = false;
            continue;
        }
        if path.len() == n && adj[last] >> path[0] & 1 == 1 {
            return Some(path);
        }
        // rotate: an on-path neighbor w of the end makes the successor of w
        // the new end by reversing the tail
        tried |= 1 << last;
        let mut pivot = None;
        let mut options = adj[last] & on;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            let i = pos[w];
            if i + 1 < path.len() && tried >> path[i + 1] & 1 == 0 {
                pivot = Some(i);
                break;
            }
        }
        match pivot {
            Some(i) => {
                path[i + 1..].reverse();
                for (k, &v) in path.iter().enumerate().skip(i + 1) {
                    pos[v] = k;
                }
                flipped = false;
            }
            None if !flipped => {
                // work from the other end of the path
                path.reverse();
                for (k, &v) in path.iter().enumerate() {
                    pos[v] = k;
                }
                flipped = true;
            }
            None => return None,
        }
    }
    None
}

/// Hamiltonian path by backtracking over all start vertices.
pub fn hamiltonian_path(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    for s in 0..n {
        let mut search = HamSearch::new(adj, false, s);
        if search.run() {
            return Some(search.path);
        }
    }
    None
}

/// Backtracking state over bitmask adjacency; graphs are capped at 128
/// vertices, comfortably above the quotient sizes at desk scale.
struct HamSearch {
    adj: Vec<u128>,
    cycle: bool,
    path: Vec<usize>,
    remaining: u128,
}

impl HamSearch {
    fn new(neighbors: &[Vec<usize>], cycle: bool, start: usize) -> Self {
        let n = neighbors.len();
        assert!(
            n <= 128,
            "hamiltonian search is sized for desk-scale graphs"
        );
        let adj: Vec<u128> = neighbors
            .iter()
            .map(|row| row.iter().fold(0u128, |m, &w| m | 1 << w))
            .collect();
        let mut remaining = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        remaining &= !(1 << start);
        HamSearch {
            adj,
            cycle,
            path: vec![start],
            remaining,
        }
    }

    fn run(&mut self) -> bool {
        if self.remaining == 0 {
            let last = *self.path.last().unwrap();
            return !self.cycle || self.adj[last] >> self.path[0] & 1 == 1;
        }
        let last = *self.path.last().unwrap();
        let start = self.path[0];
        let required = if self.cycle { 2u32 } else { 1 };
        if self.cycle && self.adj[start] & self.remaining == 0 {
            return false; // the cycle can no longer close
        }
        // endpoints still count as usable connections; a vertex whose
        // usable connections are down to the minimum and include the
        // current endpoint must be visited next (at depth one of a cycle
        // search the start still has both of its slots, so the shortcut
        // does not apply there)
        let forcing = !(self.cycle && self.path.len() == 1);
        let usable_mask = self.remaining | 1 << last | u128::from(self.cycle) << start;
        let mut forced_next: Option<usize> = None;
        let mut rest = self.remaining;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let usable = self.adj[v] & usable_mask;
            if usable.count_ones() < required {
                return false;
            }
            if forcing
                && usable.count_ones() == required
                && usable >> last & 1 == 1
                && forced_next.replace(v).is_some()
            {
                return false; // two vertices both demand the last slot
            }
        }
        if let Some(w) = forced_next {
            self.path.push(w);
            self.remaining &= !(1 << w);
            if self.run() {
                return true;
            }
            self.remaining |= 1 << w;
            self.path.pop();
            return false;
        }
        // the unvisited vertices plus the endpoint must stay connected
        let mut seen = 1u128 << last;
        let mut frontier = seen;
        let goal = self.remaining | seen;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v] & goal;
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        if seen != goal {
            return false;
        }
        // fewest free neighbors first, ties by index
        let mut candidates: Vec<(u32, usize)> = Vec::new();
        let mut options = self.adj[last] & self.remaining;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            candidates.push(((self.adj[w] & self.remaining).count_ones(), w));
        }
        candidates.sort_unstable();
        for (_, w) in candidates {
            self.path.push(w);
            self.remaining &= !(1 << w);
            if self.run() {
                return true;
            }
            self.remaining |= 1 << w;
            self.path.pop();
        }
        false
    }
}
