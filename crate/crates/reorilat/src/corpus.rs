//! Exhaustive corpora of directed acyclic graphs up to isomorphism.
//!
//! Every dag is isomorphic to a subgraph of the increasing tournament (label
//! the vertices along a topological order), so the generator walks arc
//! subsets of the tournament and dedupes by canonical form: the minimal
//! ordered-pair bitmask over all vertex relabelings.

use crate::dag::Dag;
use std::collections::HashSet;

/// All dags on exactly `n` vertices, up to isomorphism, in a deterministic
/// order.
pub fn dags_up_to_iso(n: usize) -> Vec<Dag> {
    assert!(n <= 8, "corpus generation is meant for desk scale");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    // pair_code[u][v] = bit position of the ordered pair (u, v)
    let mut pair_code = vec![vec![usize::MAX; n]; n];
    let mut code = 0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                pair_code[u][v] = code;
                code += 1;
            }
        }
    }
    // each relabeling, as a map of ordered-pair bit positions
    let mut perm_tables: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut table = vec![usize::MAX; code];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    table[pair_code[u][v]] = pair_code[p[u]][p[v]];
                }
            }
        }
        perm_tables.push(table);
    });

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let arc_bits: Vec<usize> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let key = perm_tables
            .iter()
            .map(|table| {
                let mut relabeled = 0u64;
                for &i in &arc_bits {
                    let (u, v) = pairs[i];
                    relabeled |= 1 << table[pair_code[u][v]];
                }
                relabeled
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            let arcs = arc_bits.iter().map(|&i| pairs[i]).collect();
            out.push(Dag::new(n, arcs).expect("subgraph of tournament is a dag"));
        }
    }
    out
}

/// All dags on `1..=max_n` vertices up to isomorphism.
pub fn dags_up_to(max_n: usize) -> Vec<Dag> {
    (1..=max_n).flat_map(dags_up_to_iso).collect()
}

pub fn vertebrate_up_to(max_n: usize) -> Vec<Dag> {
    dags_up_to(max_n)
        .into_iter()
        .filter(Dag::is_vertebrate)
        .collect()
}

pub fn skeletal_up_to(max_n: usize) -> Vec<Dag> {
    dags_up_to(max_n)
        .into_iter()
        .filter(Dag::is_skeletal)
        .collect()
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_counts_match_acyclic_digraph_numbers() {
        // numbers of acyclic digraphs up to isomorphism
        assert_eq!(dags_up_to_iso(1).len(), 1);
        assert_eq!(dags_up_to_iso(2).len(), 2);
        assert_eq!(dags_up_to_iso(3).len(), 6);
        assert_eq!(dags_up_to_iso(4).len(), 31);
        assert_eq!(dags_up_to_iso(5).len(), 302);
    }

    #[test]
    fn corpus_is_pairwise_non_isomorphic() {
        let dags = dags_up_to_iso(4);
        let keys: HashSet<Vec<(usize, usize)>> = dags.iter().map(|d| d.canonical_key()).collect();
        assert_eq!(keys.len(), dags.len());
    }

    #[test]
    fn reduction_closure_identity_on_corpus() {
        for d in dags_up_to(5) {
            assert_eq!(
                d.transitive_closure().transitive_reduction(),
                d.transitive_reduction()
            );
        }
    }

    #[test]
    fn implication_chain_chordful_skeletal_chordal() {
        let mut skeletal_not_chordful = false;
        let mut chordal_not_skeletal = false;
        for d in dags_up_to(5) {
            if d.is_chordful() {
                assert!(d.is_skeletal());
            }
            if d.is_skeletal() {
                assert!(d.is_chordal());
            }
            skeletal_not_chordful |= d.is_skeletal() && !d.is_chordful();
            chordal_not_skeletal |= d.is_chordal() && !d.is_skeletal();
        }
        assert!(skeletal_not_chordful, "converse should fail on a witness");
        assert!(chordal_not_skeletal, "converse should fail on a witness");
    }

    #[test]
    fn pruned_vertebrate_matches_naive_on_corpus() {
        for d in dags_up_to(5) {
            assert_eq!(d.is_vertebrate(), d.is_vertebrate_naive());
        }
    }
}
