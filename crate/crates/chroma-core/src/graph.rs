//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Vertices are dense integers `0..n`; adjacency is one `u64` bitmask per
//! vertex. All structural operations return fresh graphs, so values can be
//! shared freely across threads.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the vertex count, set by the `u64` adjacency masks.
pub const MAX_VERTICES: usize = 64;

/// Index of a vertex within a particular [`Graph`], always `< n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

#[inline(always)]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Simple undirected graph: no loops, no multi-edges, adjacency symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n], m: 0 })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { v });
            }
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u, v, n });
            }
            if g.adj[u] & bit(v) == 0 {
                g.adj[u] |= bit(v);
                g.adj[v] |= bit(u);
                g.m += 1;
            }
        }
        Ok(g)
    }

    /// Rebuilds a graph directly from adjacency masks (internal fast path).
    pub(crate) fn from_adj(adj: Vec<u64>) -> Graph {
        let n = adj.len();
        debug_assert!(n <= MAX_VERTICES);
        let mut m = 0usize;
        for (v, &mask) in adj.iter().enumerate() {
            debug_assert_eq!(mask & bit(v), 0, "self-loop at {v}");
            debug_assert_eq!(mask >> n, 0, "bits outside vertex range");
            m += mask.count_ones() as usize;
        }
        debug_assert_eq!(m % 2, 0, "adjacency not symmetric");
        Graph { n, adj, m: m / 2 }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::edgeless(n)?;
        let full = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for v in 0..n {
            g.adj[v] = full & !bit(v);
        }
        g.m = n * n.saturating_sub(1) / 2;
        Ok(g)
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// Path `0-1-...-(n-1)`; requires `n >= 1`.
    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::invalid("path needs at least 1 vertex".to_string()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    /// Neighbor bitmask of `v`.
    #[inline(always)]
    pub fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !(bit(u) | (bit(u) - 1))) {
                out.push((u, v));
            }
        }
        out
    }

    /// True iff the graph has a single connected component (n >= 1).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = bit(0);
        let mut frontier = bit(0);
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// Vertex sets of the connected components, each as a bitmask.
    pub fn components(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut unseen = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let mut seen = bit(start);
            let mut frontier = bit(start);
            while frontier != 0 {
                let mut next = 0u64;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !seen;
                seen |= next;
            }
            out.push(seen);
            unseen &= !seen;
        }
        out
    }

    /// Induced subgraph on the vertices of `mask`, relabeled to `0..popcount`
    /// preserving the original relative order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = BitIter(mask).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![0u64; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for u in BitIter(self.adj[v] & mask) {
                adj[i] |= bit(index[u]);
            }
        }
        Graph::from_adj(adj)
    }

    /// Maximal subgraph of minimum degree >= 2 plus the removal order of the
    /// peeled vertices. The core keeps the surviving vertices in increasing
    /// original order; it may be empty.
    pub fn two_core(&self) -> (Graph, Vec<VertexId>) {
        let mut alive = if self.n == 64 { u64::MAX } else { bit(self.n).wrapping_sub(1) };
        if self.n == 0 {
            return (Graph::edgeless(0).unwrap(), Vec::new());
        }
        let mut removed = Vec::new();
        loop {
            let mut peel = None;
            for v in BitIter(alive) {
                if (self.adj[v] & alive).count_ones() <= 1 {
                    peel = Some(v);
                    break;
                }
            }
            match peel {
                Some(v) => {
                    alive &= !bit(v);
                    removed.push(VertexId(v));
                }
                None => break,
            }
        }
        (self.induced(alive), removed)
    }

    /// Merges the nonadjacent pair `u, v` into one vertex whose neighborhood
    /// is `N(u) ∪ N(v)`. The lower index survives; the highest-indexed vertex
    /// is relabeled into the hole left by the other.
    pub fn contract(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        let (u, v) = (u.0, v.0);
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::invalid(format!("cannot contract vertex {u} with itself")));
        }
        if self.has_edge(u, v) {
            return Err(Error::AdjacentContraction { u, v });
        }
        Ok(self.merge_vertices(u, v))
    }

    /// Contracts the edge `u v` (for deletion–contraction): endpoints merge
    /// and the shared edge disappears.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        let (u, v) = (u.0, v.0);
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAdjacent { u, v });
        }
        Ok(self.merge_vertices(u, v))
    }

    /// Shared merge: keep `min(u,v)`, move the top vertex into `max(u,v)`.
    fn merge_vertices(&self, u: usize, v: usize) -> Graph {
        let lo = u.min(v);
        let hi = u.max(v);
        let top = self.n - 1;
        let merged = (self.adj[u] | self.adj[v]) & !(bit(u) | bit(v));
        // old-label accessor for the merged graph's slot w
        let old_adj = |w: usize| -> u64 {
            if w == lo {
                merged
            } else if w == hi {
                self.adj[top]
            } else {
                self.adj[w]
            }
        };
        // relabel old bit positions: lo absorbs hi, top moves to hi
        let relabel = |mask: u64| -> u64 {
            let mut out = 0u64;
            for w in BitIter(mask) {
                let w2 = if w == hi || w == lo {
                    lo
                } else if w == top {
                    hi
                } else {
                    w
                };
                out |= bit(w2);
            }
            out
        };
        let mut adj = vec![0u64; self.n - 1];
        for (w, slot) in adj.iter_mut().enumerate() {
            *slot = relabel(old_adj(w)) & !bit(w);
        }
        Graph::from_adj(adj)
    }

    pub fn delete_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        let (u, v) = (u.0, v.0);
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let mut adj = self.adj.clone();
        adj[u] &= !bit(v);
        adj[v] &= !bit(u);
        Ok(Graph { n: self.n, adj, m: self.m - 1 })
    }

    pub fn add_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        let (u, v) = (u.0, v.0);
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop { v });
        }
        if self.has_edge(u, v) {
            return Err(Error::AlreadyAnEdge { u, v });
        }
        let mut adj = self.adj.clone();
        adj[u] |= bit(v);
        adj[v] |= bit(u);
        Ok(Graph { n: self.n, adj, m: self.m + 1 })
    }

    /// Removes `v`; remaining vertices shift down preserving order.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph> {
        let v = v.0;
        self.check_vertex(v)?;
        let mask = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        Ok(self.induced(mask & !bit(v)))
    }

    pub fn is_clique(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    /// Elimination order: repeatedly remove a minimum-degree vertex
    /// (lowest index on ties).
    pub fn degeneracy_order(&self) -> Vec<VertexId> {
        let mut alive = if self.n == 64 { u64::MAX } else { bit(self.n).wrapping_sub(1) };
        let mut order = Vec::with_capacity(self.n);
        while alive != 0 {
            let v = BitIter(alive)
                .min_by_key(|&v| ((self.adj[v] & alive).count_ones(), v))
                .unwrap();
            order.push(VertexId(v));
            alive &= !bit(v);
        }
        order
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }
}

/// Iterator over the set bit positions of a `u64`.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline(always)]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}
