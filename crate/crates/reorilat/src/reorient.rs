//! The acyclic reorientation poset of a dag: enumeration, order, covers,
//! join and meet, irreducibles, canonical representations, and the lattice
//! property characterizations.
//!
//! Elements are encoded by their reversed arc sets. The order is inclusion
//! of reversed sets, so order tests are subset tests on bitsets, and covers
//! flip a single arc of the transitive reduction of the current
//! reorientation.

use crate::bits::{ArcSet, VertexSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use std::collections::HashMap;

/// Default element cap for enumeration, overridable through the
/// `REORILAT_MAX_ELEMENTS` environment variable.
pub fn default_cap() -> u64 {
    std::env::var("REORILAT_MAX_ELEMENTS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cover {
    pub lo: u32,
    pub hi: u32,
    /// Arc of the underlying dag flipped along this cover.
    pub arc: u8,
}

pub struct ArLattice {
    dag: Dag,
    elements: Vec<ArcSet>,
    index: HashMap<ArcSet, u32>,
    /// Arcs of the transitive reduction of each reorientation.
    reduction: Vec<ArcSet>,
    up: Vec<Vec<(u32, u8)>>,
    down: Vec<Vec<(u32, u8)>>,
}

impl ArLattice {
    pub fn new(dag: &Dag) -> Result<ArLattice> {
        Self::with_cap(dag, default_cap())
    }

    /// Breadth-first enumeration from the reference orientation, flipping
    /// arcs of the transitive reduction. Refuses when the predicted number
    /// of acyclic reorientations exceeds `cap`.
    pub fn with_cap(dag: &Dag, cap: u64) -> Result<ArLattice> {
        let m = dag.arc_count();
        if m as u32 >= 64 || (m < 64 && (1u128 << m) > cap as u128) {
            let predicted = dag
                .acyclic_orientation_count_budgeted(50_000_000)
                .unwrap_or(1u128 << m);
            if predicted > cap as u128 {
                return Err(Error::SizeGuard { predicted, cap });
            }
        }

        let mut order = Vec::new();
        let mut seen: HashMap<ArcSet, u32> = HashMap::new();
        seen.insert(ArcSet::EMPTY, 0);
        order.push(ArcSet::EMPTY);
        let mut head = 0;
        while head < order.len() {
            let e = order[head];
            head += 1;
            for arc in dag.reduction_arcs(e).iter() {
                let f = if e.contains(arc) {
                    e.without(arc)
                } else {
                    e.with(arc)
                };
                if seen.insert(f, 0).is_none() {
                    order.push(f);
                }
            }
        }

        let mut elements = order;
        elements.sort_unstable();
        let index: HashMap<ArcSet, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        let reduction: Vec<ArcSet> = elements.iter().map(|&e| dag.reduction_arcs(e)).collect();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for (i, &e) in elements.iter().enumerate() {
            for arc in reduction[i].iter() {
                if !e.contains(arc) {
                    let j = index[&e.with(arc)];
                    up[i].push((j, arc as u8));
                    down[j as usize].push((i as u32, arc as u8));
                }
            }
        }
        Ok(ArLattice {
            dag: dag.clone(),
            elements,
            index,
            reduction,
            up,
            down,
        })
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ArcSet] {
        &self.elements
    }

    pub fn reversed(&self, i: usize) -> ArcSet {
        self.elements[i]
    }

    pub fn index_of(&self, e: ArcSet) -> Option<usize> {
        self.index.get(&e).map(|&i| i as usize)
    }

    /// Arcs of the transitive reduction of element `i`, as dag arc ids.
    /// These are exactly the flippable arcs.
    pub fn reduction_arcs(&self, i: usize) -> ArcSet {
        self.reduction[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(self.elements[b])
    }

    pub fn up_covers(&self, i: usize) -> &[(u32, u8)] {
        &self.up[i]
    }

    pub fn down_covers(&self, i: usize) -> &[(u32, u8)] {
        &self.down[i]
    }

    pub fn covers(&self) -> impl Iterator<Item = Cover> + '_ {
        (0..self.len()).flat_map(move |i| {
            self.up[i].iter().map(move |&(j, arc)| Cover {
                lo: i as u32,
                hi: j,
                arc,
            })
        })
    }

    pub fn bottom(&self) -> usize {
        self.index[&ArcSet::EMPTY] as usize
    }

    pub fn top(&self) -> usize {
        self.index[&self.dag.all_arcs()] as usize
    }

    /// The arc-reversal involution `E -> complement of E`; order reversing.
    pub fn dual_element(&self, i: usize) -> usize {
        self.index[&self.elements[i].complement(self.dag.arc_count())] as usize
    }

    /// Materializes the explicit poset (order = inclusion of reversed sets).
    pub fn as_poset(&self) -> FinitePoset {
        FinitePoset::from_relations(
            self.len(),
            self.covers().map(|c| (c.lo as usize, c.hi as usize)),
        )
    }

    /// Brute-force lattice test: every pair has a unique minimal upper bound
    /// and a unique maximal lower bound among the enumerated elements.
    pub fn is_lattice_oracle(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.brute_join(a, b).is_none() || self.brute_meet(a, b).is_none() {
                    return false;
                }
            }
        }
        true
    }

    pub fn brute_join(&self, a: usize, b: usize) -> Option<usize> {
        let union = self.elements[a].union(self.elements[b]);
        let mut best: Option<usize> = None;
        for (c, &e) in self.elements.iter().enumerate() {
            if union.is_subset(e) {
                match best {
                    None => best = Some(c),
                    Some(m) if e.is_subset(self.elements[m]) => best = Some(c),
                    _ => {}
                }
            }
        }
        let m = best?;
        for (c, &e) in self.elements.iter().enumerate() {
            if union.is_subset(e) && !self.elements[m].is_subset(self.elements[c]) {
                return None;
            }
        }
        Some(m)
    }

    pub fn brute_meet(&self, a: usize, b: usize) -> Option<usize> {
        let inter = self.elements[a].intersection(self.elements[b]);
        let mut best: Option<usize> = None;
        for (c, &e) in self.elements.iter().enumerate() {
            if e.is_subset(inter) {
                match best {
                    None => best = Some(c),
                    Some(m) if self.elements[m].is_subset(e) => best = Some(c),
                    _ => {}
                }
            }
        }
        let m = best?;
        for (c, &e) in self.elements.iter().enumerate() {
            if e.is_subset(inter) && !self.elements[c].is_subset(self.elements[m]) {
                return None;
            }
        }
        Some(m)
    }

    /// Join irreducibles: exactly one reversed arc in the transitive
    /// reduction. Cross-checkable against "covers exactly one element".
    pub fn join_irreducibles(&self) -> Result<Vec<usize>> {
        if !self.dag.is_vertebrate() {
            return Err(Error::NotALattice);
        }
        Ok((0..self.len())
            .filter(|&i| self.reduction[i].intersection(self.elements[i]).len() == 1)
            .collect())
    }

    pub fn meet_irreducibles(&self) -> Result<Vec<usize>> {
        if !self.dag.is_vertebrate() {
            return Err(Error::NotALattice);
        }
        Ok((0..self.len())
            .filter(|&i| self.reduction[i].difference(self.elements[i]).len() == 1)
            .collect())
    }

    /// Minimal `z` with `x v z = y`, for a cover `x < y` of a skeletal dag:
    /// the reorientation reversing exactly the forced arcs.
    pub fn k_join(&self, x: usize, y: usize) -> Result<usize> {
        if !self.dag.is_skeletal() {
            return Err(Error::NotSemidistributive);
        }
        let (ex, ey) = (self.elements[x], self.elements[y]);
        if !self.up[x].iter().any(|&(j, _)| j as usize == y) {
            return Err(Error::NotACover);
        }
        let arc = ey.difference(ex).iter().next().expect("cover adds an arc");
        let forced = forced_arcs(&self.dag, ey, arc);
        Ok(self.index[&forced] as usize)
    }

    /// Maximal `z` with `z ^ y = x`, for a cover `x < y`; dual of `k_join`
    /// under the arc-reversal involution.
    pub fn k_meet(&self, x: usize, y: usize) -> Result<usize> {
        let (dx, dy) = (self.dual_element(x), self.dual_element(y));
        let dual_k = self.k_join(dy, dx)?;
        Ok(self.dual_element(dual_k))
    }

    /// Kreweras map: join irreducible attached to a meet irreducible.
    pub fn kappa_join(&self, m: usize) -> Result<usize> {
        if self.up[m].len() != 1 {
            return Err(Error::NotJoinIrreducible);
        }
        self.k_join(m, self.up[m][0].0 as usize)
    }

    pub fn kappa_meet(&self, j: usize) -> Result<usize> {
        if self.down[j].len() != 1 {
            return Err(Error::NotJoinIrreducible);
        }
        self.k_meet(self.down[j][0].0 as usize, j)
    }

    /// Canonical join representation: one joinand per reversed arc of the
    /// transitive reduction, namely `k_join` of the cover flipping it back.
    pub fn canonical_join_representation(&self, e: usize) -> Result<Vec<usize>> {
        if !self.dag.is_skeletal() {
            return Err(Error::NotSemidistributive);
        }
        let mut out = Vec::new();
        for &(x, _) in &self.down[e] {
            out.push(self.k_join(x as usize, e)?);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn canonical_meet_representation(&self, e: usize) -> Result<Vec<usize>> {
        if !self.dag.is_skeletal() {
            return Err(Error::NotSemidistributive);
        }
        let mut out = Vec::new();
        for &(z, _) in &self.up[e] {
            out.push(self.k_meet(e, z as usize)?);
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Arcs forced by the cover flipping `arc` up to the reorientation `ey`:
/// arcs that are the unique reversed arc of `ey` along some directed path
/// of the dag joining the endpoints of `arc`.
fn forced_arcs(dag: &Dag, ey: ArcSet, arc: usize) -> ArcSet {
    let (u, v) = dag.arc(arc);
    let mut forced = ArcSet::EMPTY;
    let mut path: Vec<usize> = Vec::new();
    paths_dfs(
        dag,
        u,
        v,
        &mut path,
        &mut VertexSet::singleton(u),
        &mut |p| {
            let reversed_on_path: Vec<usize> =
                p.iter().copied().filter(|&a| ey.contains(a)).collect();
            if let [only] = reversed_on_path[..] {
                forced.insert(only);
            }
        },
    );
    forced
}

/// Enumerates arc-id sequences of all directed paths `from -> to` in the
/// base orientation.
pub(crate) fn paths_dfs(
    dag: &Dag,
    from: usize,
    to: usize,
    path: &mut Vec<usize>,
    on_path: &mut VertexSet,
    visit: &mut impl FnMut(&[usize]),
) {
    if from == to {
        visit(path);
        return;
    }
    for (id, &(t, h)) in dag.arcs().iter().enumerate() {
        if t == from && !on_path.contains(h) {
            path.push(id);
            on_path.insert(h);
            paths_dfs(dag, h, to, path, on_path, visit);
            on_path.remove(h);
            path.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// Formula-level join and meet, and biclosedness
// ---------------------------------------------------------------------------

/// A subset of arcs is closed when every arc of the dag whose endpoints are
/// joined by a directed path of subset arcs lies in the subset.
pub fn is_closed(dag: &Dag, b: ArcSet) -> bool {
    let n = dag.n();
    let mut out = vec![VertexSet::EMPTY; n];
    for id in b.iter() {
        let (u, v) = dag.arc(id);
        out[u].insert(v);
    }
    // reachability through b-arcs
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
    (0..dag.arc_count()).all(|id| {
        let (u, v) = dag.arc(id);
        !reach[u].contains(v) || b.contains(id)
    })
}

pub fn is_coclosed(dag: &Dag, b: ArcSet) -> bool {
    is_closed(dag, b.complement(dag.arc_count()))
}

pub fn is_biclosed(dag: &Dag, b: ArcSet) -> bool {
    is_closed(dag, b) && is_coclosed(dag, b)
}

/// Join by the closure formula: reverse every arc of the dag joined by a
/// directed path of arcs reversed in at least one argument (paths taken in
/// the reversed directions). Requires a vertebrate dag.
pub fn join(dag: &Dag, es: &[ArcSet]) -> Result<ArcSet> {
    if !dag.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    Ok(join_unchecked(dag, es))
}

pub(crate) fn join_unchecked(dag: &Dag, es: &[ArcSet]) -> ArcSet {
    let mut union = ArcSet::EMPTY;
    for &e in es {
        union = union.union(e);
    }
    // reachability along reversed arcs, in the reversed direction
    let n = dag.n();
    let mut out = vec![VertexSet::EMPTY; n];
    for id in union.iter() {
        let (u, v) = dag.arc(id);
        out[v].insert(u);
    }
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
    let mut b = ArcSet::EMPTY;
    for id in 0..dag.arc_count() {
        let (u, v) = dag.arc(id);
        if reach[v].contains(u) {
            b.insert(id);
        }
    }
    debug_assert!(dag.is_acyclic_reorientation(b));
    b
}

/// Meet, by self-duality under reversing all arcs.
pub fn meet(dag: &Dag, es: &[ArcSet]) -> Result<ArcSet> {
    if !dag.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    let m = dag.arc_count();
    let duals: Vec<ArcSet> = es.iter().map(|e| e.complement(m)).collect();
    Ok(join_unchecked(dag, &duals).complement(m))
}

// ---------------------------------------------------------------------------
// Structural property predicates (with the definitional oracles next door)
// ---------------------------------------------------------------------------

pub fn is_lattice(dag: &Dag) -> bool {
    dag.is_vertebrate()
}

pub fn is_distributive(dag: &Dag) -> Result<bool> {
    if !dag.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    Ok(dag.is_forest())
}

pub fn is_semidistributive(dag: &Dag) -> Result<bool> {
    if !dag.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    Ok(dag.is_filled())
}

pub fn is_congruence_normal(dag: &Dag) -> Result<bool> {
    if !dag.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    Ok(true)
}

pub fn is_congruence_uniform(dag: &Dag) -> Result<bool> {
    if !dag.is_vertebrate() {
        return Err(Error::NotALattice);
    }
    Ok(dag.is_filled())
}

/// Rank of every vertex in the BFS-lexicographic linear extension of the
/// reorientation: repeatedly remove the smallest-index source.
pub fn bfs_lex_ranks(dag: &Dag, reversed: ArcSet) -> Vec<usize> {
    let n = dag.n();
    let out = dag.out_masks(reversed);
    let mut indeg = vec![0usize; n];
    for v in 0..n {
        for w in out[v].iter() {
            indeg[w] += 1;
        }
    }
    let mut removed = vec![false; n];
    let mut rank = vec![0usize; n];
    for r in 0..n {
        let v = (0..n)
            .find(|&v| !removed[v] && indeg[v] == 0)
            .expect("acyclic reorientation has a source");
        removed[v] = true;
        rank[v] = r;
        for w in out[v].iter() {
            indeg[w] -= 1;
        }
    }
    rank
}
