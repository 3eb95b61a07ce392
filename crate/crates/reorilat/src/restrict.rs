//! Restriction maps between acyclic reorientation posets on nested arc sets:
//! fibers and their extrema, the pathful trichotomy, and the Catalan family
//! of lattice-quotient subgraphs of a tournament.

use crate::bits::{ArcSet, VertexSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::reorient::{paths_dfs, ArLattice};

pub struct RestrictionMap {
    d: Dag,
    d_sub: Dag,
    /// Arc id in `d` of each arc of `d_sub`.
    arc_injection: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeMapClassification {
    pub fibers_are_intervals: bool,
    pub is_lattice_quotient_map: bool,
    pub is_interval_isomorphism: bool,
}

/// A path violating one of the pathful conditions.
#[derive(Clone, Debug)]
pub struct PathfulWitness {
    pub level: &'static str,
    pub endpoints: (usize, usize),
    /// Arc ids of the ambient graph along the violating path.
    pub path: Vec<usize>,
}

impl RestrictionMap {
    pub fn new(d: &Dag, d_sub: &Dag) -> Result<RestrictionMap> {
        if d.n() != d_sub.n() {
            return Err(Error::InvalidInput(
                "restriction requires the same vertex set".into(),
            ));
        }
        let mut arc_injection = Vec::with_capacity(d_sub.arc_count());
        for &(u, v) in d_sub.arcs() {
            match d.arc_id(u, v) {
                Some(id) => arc_injection.push(id),
                None => return Err(Error::ArcNotInGraph(u, v)),
            }
        }
        Ok(RestrictionMap {
            d: d.clone(),
            d_sub: d_sub.clone(),
            arc_injection,
        })
    }

    pub fn ambient(&self) -> &Dag {
        &self.d
    }

    pub fn subgraph(&self) -> &Dag {
        &self.d_sub
    }

    pub fn arc_injection(&self) -> &[usize] {
        &self.arc_injection
    }

    /// Reversed set of the restriction: forget arcs outside the subgraph.
    pub fn restrict(&self, e: ArcSet) -> ArcSet {
        let mut out = ArcSet::EMPTY;
        for (sub_id, &amb_id) in self.arc_injection.iter().enumerate() {
            if e.contains(amb_id) {
                out.insert(sub_id);
            }
        }
        out
    }

    /// Embeds a reorientation of the subgraph as a reorientation of the
    /// ambient graph reversing exactly the same arcs. Acyclic when the
    /// subgraph is strongly pathful.
    pub fn embed(&self, e_sub: ArcSet) -> ArcSet {
        let mut out = ArcSet::EMPTY;
        for (sub_id, &amb_id) in self.arc_injection.iter().enumerate() {
            if e_sub.contains(sub_id) {
                out.insert(amb_id);
            }
        }
        out
    }

    pub fn fiber(&self, ar: &ArLattice, e_sub: ArcSet) -> Vec<usize> {
        (0..ar.len())
            .filter(|&i| self.restrict(ar.reversed(i)) == e_sub)
            .collect()
    }

    /// The candidate minimum of the fiber: reverse an ambient arc iff the
    /// reoriented subgraph has a directed path from its head to its tail.
    /// It is the fiber minimum exactly when it is acyclic.
    pub fn fiber_min_candidate(&self, e_sub: ArcSet) -> ArcSet {
        let sub_reach = self
            .d_sub
            .reach(e_sub)
            .expect("subgraph reorientation must be acyclic");
        let mut rev = ArcSet::EMPTY;
        for id in 0..self.d.arc_count() {
            let (u, v) = self.d.arc(id);
            if sub_reach[v].contains(u) {
                rev.insert(id);
            }
        }
        rev
    }

    pub fn fiber_min(&self, e_sub: ArcSet) -> Option<ArcSet> {
        let cand = self.fiber_min_candidate(e_sub);
        self.d.is_acyclic_reorientation(cand).then_some(cand)
    }

    /// Dual of `fiber_min` under the arc-reversal involution.
    pub fn fiber_max(&self, e_sub: ArcSet) -> Option<ArcSet> {
        let dual_sub = e_sub.complement(self.d_sub.arc_count());
        self.fiber_min(dual_sub)
            .map(|e| e.complement(self.d.arc_count()))
    }

    // -- the pathful hierarchy (quantified over directed paths of the base
    //    orientation) --

    /// Along any directed path of the ambient graph whose endpoints are
    /// joined by an arc of the subgraph, at most one arc is missing from the
    /// subgraph.
    pub fn is_weakly_pathful(&self) -> bool {
        let sub_arc_mask = self.sub_arc_mask();
        for &(u, v) in self.d_sub.arcs() {
            let mut ok = true;
            self.for_each_path(u, v, &mut |arcs| {
                let missing = arcs.iter().filter(|&&a| !sub_arc_mask.contains(a)).count();
                if missing > 1 {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Any directed path of the ambient graph joining the endpoints of an
    /// arc of the subgraph stays in the subgraph.
    pub fn is_pathful(&self) -> bool {
        let sub_arc_mask = self.sub_arc_mask();
        for &(u, v) in self.d_sub.arcs() {
            let mut ok = true;
            self.for_each_path(u, v, &mut |arcs| {
                if arcs.iter().any(|&a| !sub_arc_mask.contains(a)) {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Any directed path of the ambient graph joining the endpoints of a
    /// directed path of the subgraph stays in the subgraph.
    pub fn is_strongly_pathful(&self) -> bool {
        let sub_arc_mask = self.sub_arc_mask();
        let sub_reach = self
            .d_sub
            .reach(ArcSet::EMPTY)
            .expect("subgraph is acyclic");
        for u in 0..self.d.n() {
            for v in sub_reach[u].iter() {
                let mut ok = true;
                self.for_each_path(u, v, &mut |arcs| {
                    if arcs.iter().any(|&a| !sub_arc_mask.contains(a)) {
                        ok = false;
                    }
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn sub_arc_mask(&self) -> ArcSet {
        ArcSet::from_iter(self.arc_injection.iter().copied())
    }

    /// A violating path for the strictest failing pathful level: the arc
    /// ids of an ambient path joining `endpoints`, quantified per level.
    pub fn pathful_witness(&self) -> Option<PathfulWitness> {
        let sub_arc_mask = self.sub_arc_mask();
        let mut witness: Option<PathfulWitness> = None;
        // weakest level first so the reported witness explains every failure
        for &(u, v) in self.d_sub.arcs() {
            self.for_each_path(u, v, &mut |arcs| {
                let missing = arcs.iter().filter(|&&a| !sub_arc_mask.contains(a)).count();
                if witness.is_none() && missing > 1 {
                    witness = Some(PathfulWitness {
                        level: "weakly pathful",
                        endpoints: (u, v),
                        path: arcs.to_vec(),
                    });
                }
            });
        }
        if witness.is_some() {
            return witness;
        }
        for &(u, v) in self.d_sub.arcs() {
            self.for_each_path(u, v, &mut |arcs| {
                if witness.is_none() && arcs.iter().any(|&a| !sub_arc_mask.contains(a)) {
                    witness = Some(PathfulWitness {
                        level: "pathful",
                        endpoints: (u, v),
                        path: arcs.to_vec(),
                    });
                }
            });
        }
        if witness.is_some() {
            return witness;
        }
        let sub_reach = self
            .d_sub
            .reach(ArcSet::EMPTY)
            .expect("subgraph is acyclic");
        for u in 0..self.d.n() {
            for v in sub_reach[u].iter() {
                self.for_each_path(u, v, &mut |arcs| {
                    if witness.is_none() && arcs.iter().any(|&a| !sub_arc_mask.contains(a)) {
                        witness = Some(PathfulWitness {
                            level: "strongly pathful",
                            endpoints: (u, v),
                            path: arcs.to_vec(),
                        });
                    }
                });
            }
        }
        witness
    }

    fn for_each_path(&self, u: usize, v: usize, visit: &mut impl FnMut(&[usize])) {
        let mut path = Vec::new();
        paths_dfs(
            &self.d,
            u,
            v,
            &mut path,
            &mut VertexSet::singleton(u),
            visit,
        );
    }

    /// Classification through the pathful predicates. Requires both graphs
    /// to be vertebrate. The pathful and strongly pathful flags coincide
    /// with the lattice-quotient-map and interval-isomorphism properties of
    /// the restriction; weak pathfulness guarantees interval fibers but the
    /// converse can fail when a binding cycle carries a chord (see
    /// [`classify_by_oracle`](Self::classify_by_oracle) for the exact
    /// fiber-level answers).
    pub fn classify_lattice_map(&self) -> Result<LatticeMapClassification> {
        if !self.d.is_vertebrate() || !self.d_sub.is_vertebrate() {
            return Err(Error::NotALattice);
        }
        Ok(LatticeMapClassification {
            fibers_are_intervals: self.is_weakly_pathful(),
            is_lattice_quotient_map: self.is_pathful(),
            is_interval_isomorphism: self.is_strongly_pathful(),
        })
    }

    /// Definitional oracle for the same three properties, on the explicitly
    /// enumerated posets.
    pub fn classify_by_oracle(&self) -> Result<LatticeMapClassification> {
        let ar = ArLattice::new(&self.d)?;
        let ar_sub = ArLattice::new(&self.d_sub)?;

        let fibers: Vec<Vec<usize>> = (0..ar_sub.len())
            .map(|s| self.fiber(&ar, ar_sub.reversed(s)))
            .collect();

        let fiber_extremes: Vec<Option<(usize, usize)>> = fibers
            .iter()
            .map(|fiber| {
                let min = fiber
                    .iter()
                    .copied()
                    .find(|&x| fiber.iter().all(|&y| ar.leq(x, y)));
                let max = fiber
                    .iter()
                    .copied()
                    .find(|&x| fiber.iter().all(|&y| ar.leq(y, x)));
                Some((min?, max?))
            })
            .collect();

        let fibers_are_intervals = fibers.iter().zip(&fiber_extremes).all(|(fiber, ext)| {
            ext.is_some_and(|(lo, hi)| {
                let count = (0..ar.len())
                    .filter(|&x| ar.leq(lo, x) && ar.leq(x, hi))
                    .count();
                count == fiber.len()
            })
        });

        // lattice map: fibers are intervals and both projections are order
        // preserving
        let is_lattice_quotient_map = fibers_are_intervals && {
            let fiber_of_elem: Vec<usize> = (0..ar.len())
                .map(|i| {
                    ar_sub
                        .index_of(self.restrict(ar.reversed(i)))
                        .expect("restriction of acyclic is acyclic")
                })
                .collect();
            let proj: Vec<(usize, usize)> = fiber_of_elem
                .iter()
                .map(|&s| fiber_extremes[s].expect("interval fibers have extremes"))
                .collect();
            (0..ar.len()).all(|a| {
                (0..ar.len()).all(|b| {
                    !ar.leq(a, b) || (ar.leq(proj[a].0, proj[b].0) && ar.leq(proj[a].1, proj[b].1))
                })
            })
        };

        // interval isomorphism: some lower interval maps isomorphically
        // (equivalently some upper interval, by the arc-reversal involution)
        let maps_isomorphically = |interval: &[usize]| {
            if interval.len() != ar_sub.len() {
                return false;
            }
            let images: Vec<usize> = interval
                .iter()
                .filter_map(|&x| ar_sub.index_of(self.restrict(ar.reversed(x))))
                .collect();
            let mut distinct = images.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != ar_sub.len() {
                return false;
            }
            interval.iter().zip(&images).all(|(&x, &ix)| {
                interval
                    .iter()
                    .zip(&images)
                    .all(|(&y, &iy)| ar.leq(x, y) == ar_sub.leq(ix, iy))
            })
        };
        let is_interval_isomorphism = (0..ar.len()).any(|top| {
            let lower: Vec<usize> = (0..ar.len()).filter(|&x| ar.leq(x, top)).collect();
            maps_isomorphically(&lower)
        });
        // the two interval forms must agree
        debug_assert_eq!(
            is_interval_isomorphism,
            (0..ar.len()).any(|bottom| {
                let upper: Vec<usize> = (0..ar.len()).filter(|&x| ar.leq(bottom, x)).collect();
                maps_isomorphically(&upper)
            })
        );

        Ok(LatticeMapClassification {
            fibers_are_intervals,
            is_lattice_quotient_map,
            is_interval_isomorphism,
        })
    }

    // -- balanced conditions: the cycle-level form, kept as the internal
    //    oracle for the fiber statements on not-necessarily-vertebrate
    //    graphs --

    #[doc(hidden)]
    pub fn is_weakly_balanced(&self) -> bool {
        self.balanced_check(|_count, missing| missing <= 1)
    }

    #[doc(hidden)]
    pub fn is_balanced(&self) -> bool {
        self.balanced_check(|count, missing| count < 2 || missing == 0)
    }

    #[doc(hidden)]
    pub fn is_strongly_balanced(&self) -> bool {
        self.balanced_check(|_count, missing| missing == 0)
    }

    /// Visits every simple cycle of the underlying graph (both traversal
    /// directions); when all backward arcs lie in the subgraph, the number
    /// of forward arcs and the number missing from the subgraph must
    /// satisfy `ok`.
    fn balanced_check(&self, ok: impl Fn(usize, usize) -> bool) -> bool {
        let sub_mask = self.sub_arc_mask();
        let d = &self.d;
        let mut good = true;
        let mut visit = |cycle: &[usize]| {
            for dir in [false, true] {
                let k = cycle.len();
                let mut backward_ok = true;
                let mut forward_count = 0;
                let mut forward_missing = 0;
                for i in 0..k {
                    let (a, b) = if dir {
                        (cycle[(i + 1) % k], cycle[i])
                    } else {
                        (cycle[i], cycle[(i + 1) % k])
                    };
                    if let Some(id) = d.arc_id(a, b) {
                        // forward arc along the traversal
                        forward_count += 1;
                        if !sub_mask.contains(id) {
                            forward_missing += 1;
                        }
                    } else {
                        let id = d.arc_id(b, a).expect("cycle uses graph edges");
                        if !sub_mask.contains(id) {
                            backward_ok = false;
                        }
                    }
                }
                if backward_ok && !ok(forward_count, forward_missing) {
                    good = false;
                }
            }
        };
        for_each_simple_cycle(d, &mut visit);
        good
    }
}

/// Simple cycles of the underlying undirected graph as vertex sequences,
/// each reported once up to rotation and reflection.
fn for_each_simple_cycle(d: &Dag, visit: &mut impl FnMut(&[usize])) {
    fn dfs(
        d: &Dag,
        anchor: usize,
        v: usize,
        path: &mut Vec<usize>,
        on_path: &mut VertexSet,
        visit: &mut impl FnMut(&[usize]),
    ) {
        for w in 0..d.n() {
            if !d.adjacent(v, w) {
                continue;
            }
            if w == anchor && path.len() >= 3 && path[1] < path[path.len() - 1] {
                visit(path);
            } else if w > anchor && !on_path.contains(w) {
                path.push(w);
                on_path.insert(w);
                dfs(d, anchor, w, path, on_path, visit);
                on_path.remove(w);
                path.pop();
            }
        }
    }
    for s in 0..d.n() {
        let mut path = vec![s];
        let mut on_path = VertexSet::singleton(s);
        dfs(d, s, s, &mut path, &mut on_path, visit);
    }
}

/// Subgraphs of the increasing tournament on `n` vertices closed under
/// nesting: if the subgraph has an arc `(i, l)`, it has every arc `(j, k)`
/// with `i <= j < k <= l`. These are exactly the subgraphs whose acyclic
/// reorientation poset is a lattice quotient of the weak order, and they
/// are counted by the Catalan numbers.
pub fn nonnesting_quotient_subgraphs(n: usize) -> Vec<Dag> {
    let tournament = Dag::tournament(n);
    let m = tournament.arc_count();
    let mut out = Vec::new();
    'mask: for mask in 0u64..1 << m {
        let arcs = ArcSet(mask);
        for id in arcs.iter() {
            let (i, l) = tournament.arc(id);
            for j in i..l {
                for k in j + 1..=l {
                    if !arcs.contains(tournament.arc_id(j, k).unwrap()) {
                        continue 'mask;
                    }
                }
            }
        }
        let sub_arcs = arcs.iter().map(|id| tournament.arc(id)).collect();
        out.push(Dag::new(n, sub_arcs).unwrap());
    }
    out
}
