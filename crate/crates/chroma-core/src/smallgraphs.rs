//! Exhaustive corpora of connected graphs up to isomorphism, for small n.
//!
//! Graphs are grown one vertex at a time: every connected graph on `n + 1`
//! vertices arises by attaching a new vertex to a nonempty subset of some
//! connected graph on `n` vertices (delete any non-cut vertex to see this).
//! Duplicates are filtered through a canonical key — the minimum, over all
//! relabelings, of the upper-triangle adjacency bits read column by column —
//! computed by a depth-first search with prefix pruning.
//!
//! This brute-force canonicalization is meant for the desk-scale corpora
//! used by the verification harnesses (fast through n = 8, minutes at
//! n = 9); the published counts of connected graphs serve as its oracle.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::graph::Graph;

/// Number of connected graphs on `1..=n` vertices up to isomorphism
/// (OEIS A001349); used to sanity-check the enumerator.
pub const CONNECTED_COUNTS: [usize; 9] = [1, 1, 2, 6, 21, 112, 853, 11117, 261080];

/// Canonical key: minimum packed upper-triangle bitstring over all
/// relabelings. Usable for n <= 11 (55 triangle bits).
pub fn canonical_key(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical keys are limited to 11 vertices");
    if n <= 1 {
        return 0;
    }
    let mut search = CanonSearch { g, n, best: u64::MAX, image: vec![0; n], total_bits: (n * (n - 1) / 2) as u32 };
    search.run(0, 0, 0, 0);
    search.best
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    best: u64,
    image: Vec<usize>,
    total_bits: u32,
}

impl CanonSearch<'_> {
    /// Places an original vertex at position `pos`; `key` holds the bits of
    /// the columns filled so far (`bits` of them).
    fn run(&mut self, pos: usize, used: u64, key: u64, bits: u32) {
        if pos == self.n {
            if key < self.best {
                self.best = key;
            }
            return;
        }
        for old in 0..self.n {
            if used & (1 << old) != 0 {
                continue;
            }
            let mut col = 0u64;
            for i in 0..pos {
                col = (col << 1) | u64::from(self.g.has_edge(self.image[i], old));
            }
            let next_key = (key << pos) | col;
            let next_bits = bits + pos as u32;
            // compare against the same-length prefix of the best key
            if self.best != u64::MAX && next_bits > 0 {
                let best_prefix = self.best >> (self.total_bits - next_bits);
                if next_key > best_prefix {
                    continue;
                }
            }
            self.image[pos] = old;
            self.run(pos + 1, used | (1 << old), next_key, next_bits);
        }
    }
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class.
/// Deterministic output order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1, "need at least one vertex");
    let mut current = vec![Graph::edgeless(1).expect("one vertex")];
    for size in 2..=n {
        let candidates: Vec<Graph> = current
            .iter()
            .flat_map(|g| {
                (1u64..(1 << (size - 1))).map(move |attach| extend(g, attach))
            })
            .collect();
        let keys: Vec<u64> = candidates.par_iter().map(canonical_key).collect();
        let mut seen = HashSet::with_capacity(candidates.len());
        let mut next = Vec::new();
        for (g, key) in candidates.into_iter().zip(keys) {
            if seen.insert(key) {
                next.push(g);
            }
        }
        current = next;
    }
    current
}

/// All connected graphs with `1..=n` vertices, one per isomorphism class.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

/// New top vertex adjacent to the subset `attach` of the old vertices.
fn extend(g: &Graph, attach: u64) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    for v in 0..n {
        if attach & (1 << v) != 0 {
            edges.push((v, n));
        }
    }
    Graph::from_edge_list(n + 1, &edges).expect("extension stays in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::encode_graph6;

    #[test]
    fn counts_match_published_values() {
        for (i, &expect) in CONNECTED_COUNTS.iter().enumerate().take(7) {
            let n = i + 1;
            assert_eq!(connected_graphs(n).len(), expect, "n = {n}");
        }
    }

    #[test]
    fn eight_vertex_count() {
        assert_eq!(connected_graphs(8).len(), CONNECTED_COUNTS[7]);
    }

    #[test]
    #[ignore = "n = 9 takes minutes; run explicitly for the extended corpus"]
    fn nine_vertex_count() {
        assert_eq!(connected_graphs(9).len(), CONNECTED_COUNTS[8]);
    }

    #[test]
    fn members_are_connected_and_distinct_as_graph6() {
        let graphs = connected_graphs(6);
        let mut lines = HashSet::new();
        for g in &graphs {
            assert!(g.is_connected());
            assert!(lines.insert(encode_graph6(g).unwrap()));
        }
    }

    #[test]
    fn canonical_key_is_isomorphism_invariant() {
        // same 4-cycle under two labelings
        let a = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = Graph::from_edge_list(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let p4 = Graph::path(4).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&p4));
    }
}
