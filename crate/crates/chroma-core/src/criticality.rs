//! Criticality checks, radiant vertices, collision probabilities, and the
//! named small-graph constructions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chromatic::{
    chromatic_number, count_colorings, enumerate_colorings_with_guard, is_colorable, Coloring,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::{BigCount, DEFAULT_ENUMERATION_GUARD};

/// Outcome of a criticality test.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalityReport {
    pub chi: usize,
    pub is_critical: bool,
    /// A deletion that does not lower the chromatic number, when one exists.
    pub witness: Option<CritWitness>,
    pub min_degree: usize,
    /// Edge-count floor check, populated for critical graphs with
    /// `k < n <= 2k - 1`.
    pub gallai_ok: Option<bool>,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(tag = "kind", content = "at")]
pub enum CritWitness {
    #[serde(rename = "edge")]
    Edge(usize, usize),
    #[serde(rename = "vertex")]
    Vertex(usize),
}

/// Is `g` k-critical: chromatic number exactly `k`, and every single edge or
/// vertex deletion lowers it. The chromatic number is recomputed from
/// scratch after each deletion.
pub fn is_k_critical(g: &Graph, k: usize) -> CriticalityReport {
    let chi = chromatic_number(g);
    let min_degree = g.min_degree();
    let mut witness = None;
    let mut critical = chi == k;
    if critical {
        for (u, v) in g.edges() {
            let h = g.delete_edge(VertexId(u), VertexId(v)).expect("edge exists");
            if chromatic_number(&h) != k - 1 {
                witness = Some(CritWitness::Edge(u, v));
                critical = false;
                break;
            }
        }
    }
    if critical {
        for v in g.vertices() {
            let h = g.delete_vertex(VertexId(v)).expect("vertex exists");
            if chromatic_number(&h) != k - 1 {
                witness = Some(CritWitness::Vertex(v));
                critical = false;
                break;
            }
        }
    }
    let gallai_ok = if critical && k < g.n() && g.n() < 2 * k {
        let bound = gallai_lower_bound(g.n(), k).expect("range checked");
        Some(BigRational::from_integer(BigInt::from(g.m())) >= bound)
    } else {
        None
    };
    CriticalityReport { chi, is_critical: critical, witness, min_degree, gallai_ok }
}

/// For each color `i` in `1..=k`, the lowest-indexed vertex of color `i`
/// whose closed neighborhood contains every color. Existence is guaranteed
/// whenever the chromatic number is exactly `k`; a miss is reported as an
/// invariant violation.
pub fn radiant_vertices(g: &Graph, k: usize, c: &Coloring) -> Result<Vec<VertexId>> {
    if c.k() != k || Coloring::new(g, c.colors().to_vec(), k).is_err() {
        return Err(Error::ImproperColoring { k, reason: "not a proper k-coloring of this graph".into() });
    }
    if k > 0 && is_colorable(g, k - 1) {
        return Err(Error::ChiBelowK { k });
    }
    radiant_vertices_unchecked(g, k, c)
}

/// Radiant selection without re-verifying the chromatic number; callers must
/// have established `chi(G) = k`.
pub(crate) fn radiant_vertices_unchecked(g: &Graph, k: usize, c: &Coloring) -> Result<Vec<VertexId>> {
    let full: u64 = ((1u128 << (k + 1)) - 2) as u64; // bits 1..=k
    let mut closed = vec![0u64; g.n()];
    for v in g.vertices() {
        let mut mask = 1u64 << c.color(v);
        for u in g.neighbors(v) {
            mask |= 1 << c.color(u);
        }
        closed[v] = mask;
    }
    let mut out = Vec::with_capacity(k);
    for i in 1..=k {
        let found = g
            .vertices()
            .find(|&v| c.color(v) as usize == i && closed[v] == full)
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "no radiant vertex of color {i}: chromatic number k = {k} guarantees one"
                ))
            })?;
        out.push(VertexId(found));
    }
    Ok(out)
}

/// Exact `Pr[c(u) = c(v)]` under a uniform proper `k`-coloring, by full
/// enumeration. Adjacent pairs collide with probability zero.
pub fn collision_probability(g: &Graph, k: usize, u: VertexId, v: VertexId) -> Result<BigRational> {
    collision_probability_with_guard(g, k, u, v, DEFAULT_ENUMERATION_GUARD)
}

pub fn collision_probability_with_guard(
    g: &Graph,
    k: usize,
    u: VertexId,
    v: VertexId,
    guard: u64,
) -> Result<BigRational> {
    let total = count_colorings(g, k);
    if total.is_zero() {
        return Err(Error::NoColorings { k });
    }
    if g.has_edge(u.0, v.0) {
        return Ok(BigRational::zero());
    }
    let same = enumerate_colorings_with_guard(g, k, guard)?
        .filter(|c| c.color(u.0) == c.color(v.0))
        .count();
    Ok(BigRational::new(BigInt::from(same), BigInt::from(total)))
}

/// Checks the contraction identity: the `k`-colorings of `G` with
/// `c(u) = c(v)` are in bijection with the `k`-colorings of `G/uv`.
/// The left side is counted by deletion–contraction on the contracted graph,
/// the right side by direct enumeration.
pub fn contraction_identity_check(g: &Graph, k: usize, u: VertexId, v: VertexId) -> Result<bool> {
    contraction_identity_check_with_guard(g, k, u, v, DEFAULT_ENUMERATION_GUARD)
}

pub fn contraction_identity_check_with_guard(
    g: &Graph,
    k: usize,
    u: VertexId,
    v: VertexId,
    guard: u64,
) -> Result<bool> {
    let contracted = g.contract(u, v)?;
    let lhs = count_colorings(&contracted, k);
    let rhs: u64 = enumerate_colorings_with_guard(g, k, guard)?
        .filter(|c| c.color(u.0) == c.color(v.0))
        .count() as u64;
    Ok(lhs == BigCount::from(rhs))
}

/// Expected number of monochromatic pairs inside `subset`, over a uniform
/// proper `k`-coloring. Exact rational.
pub fn pair_sum_statistic(g: &Graph, k: usize, subset: &[VertexId]) -> Result<BigRational> {
    pair_sum_statistic_with_guard(g, k, subset, DEFAULT_ENUMERATION_GUARD)
}

pub fn pair_sum_statistic_with_guard(
    g: &Graph,
    k: usize,
    subset: &[VertexId],
    guard: u64,
) -> Result<BigRational> {
    let total = count_colorings(g, k);
    if total.is_zero() {
        return Err(Error::NoColorings { k });
    }
    let mut verts: Vec<usize> = subset.iter().map(|v| v.0).collect();
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { v, n: g.n() });
        }
    }
    let mut pairs_total = BigInt::zero();
    for c in enumerate_colorings_with_guard(g, k, guard)? {
        let mut pairs = 0u64;
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if c.color(u) == c.color(v) {
                    pairs += 1;
                }
            }
        }
        pairs_total += BigInt::from(pairs);
    }
    Ok(BigRational::new(pairs_total, BigInt::from(total)))
}

/// Convexity floor: any `k`-part partition of `n <= 2k` elements has at
/// least `n - k` monochromatic pairs.
pub fn pairs_lower_bound(n: usize, k: usize) -> Result<u64> {
    if n < k || n > 2 * k {
        return Err(Error::invalid(format!("pairs lower bound needs k <= n <= 2k, got n={n}, k={k}")));
    }
    Ok((n - k) as u64)
}

/// Edge-count floor for k-critical graphs with `k < n <= 2k - 1`:
/// `(k-1) n / 2 + (n-k)(2k-n) / 2 - 1`.
pub fn gallai_lower_bound(n: usize, k: usize) -> Result<BigRational> {
    if n <= k || n > 2 * k - 1 {
        return Err(Error::invalid(format!("edge floor needs k < n <= 2k-1, got n={n}, k={k}")));
    }
    let n = BigInt::from(n);
    let k = BigInt::from(k);
    let half = |x: BigInt| BigRational::new(x, BigInt::from(2));
    let bound = half((&k - 1) * &n) + half((&n - &k) * (2 * &k - &n)) - BigRational::one();
    Ok(bound)
}

/// A k-critical graph other than the clique has a vertex of degree >= k.
pub fn brooks_check(g: &Graph, k: usize) -> Result<bool> {
    if k < 4 {
        return Err(Error::invalid(format!("check requires k >= 4, got {k}")));
    }
    let report = is_k_critical(g, k);
    if !report.is_critical {
        return Err(Error::invalid("graph is not k-critical".to_string()));
    }
    Ok(g.is_clique() || g.max_degree() >= k)
}

// ---------------------------------------------------------------------------
// named constructions
// ---------------------------------------------------------------------------

/// The Moser spindle: two diamonds glued at a vertex with opposite tips
/// joined. Vertices `u1 u2 u3 v1 v2 v3 w` are labeled `0..7`; 7 vertices,
/// 11 edges, chromatic number 4.
pub fn moser_spindle() -> Graph {
    Graph::from_edge_list(
        7,
        &[
            (0, 1),
            (0, 2),
            (1, 2), // u-triangle
            (3, 4),
            (3, 5),
            (4, 5), // v-triangle
            (0, 3), // u1 - v1
            (6, 1),
            (6, 2),
            (6, 4),
            (6, 5), // w
        ],
    )
    .expect("static edge list")
}

/// The Mycielskian of a triangle (Grötzsch-style construction on 7
/// vertices): `u_i ~ u_j`, `v_i ~ u_j` for `i != j`, and `w ~ v_i`.
/// Vertices `u1 u2 u3 v1 v2 v3 w` are labeled `0..7`; 12 edges.
pub fn mycielskian_triangle() -> Graph {
    Graph::from_edge_list(
        7,
        &[
            (0, 1),
            (0, 2),
            (1, 2), // u-triangle
            (3, 1),
            (3, 2), // v1 ~ u2, u3
            (4, 0),
            (4, 2), // v2 ~ u1, u3
            (5, 0),
            (5, 1), // v3 ~ u1, u2
            (6, 3),
            (6, 4),
            (6, 5), // w ~ v_i
        ],
    )
    .expect("static edge list")
}

/// Tree to hang off one clique vertex. Local labels are `0..size` with `0`
/// identified with the clique vertex; `edges` must form a tree.
#[derive(Clone, Debug)]
pub struct TreeSpec {
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TreeSpec {
    /// Just the clique vertex, no extra tree vertices.
    pub fn trivial() -> TreeSpec {
        TreeSpec { size: 1, edges: Vec::new() }
    }

    /// Path of `extra` additional vertices hanging off the clique vertex.
    pub fn path(extra: usize) -> TreeSpec {
        TreeSpec { size: extra + 1, edges: (0..extra).map(|i| (i, i + 1)).collect() }
    }

    fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::invalid("tree spec must contain the attachment vertex".to_string()));
        }
        if self.edges.len() + 1 != self.size {
            return Err(Error::invalid(format!(
                "tree on {} vertices needs exactly {} edges, got {}",
                self.size,
                self.size - 1,
                self.edges.len()
            )));
        }
        let g = Graph::from_edge_list(self.size, &self.edges)
            .map_err(|e| Error::invalid(format!("malformed tree spec: {e}")))?;
        if self.size > 0 && !g.is_connected() {
            return Err(Error::invalid("tree spec is not connected".to_string()));
        }
        Ok(())
    }
}

/// `K_k` with one tree attached to each clique vertex. The 2-core of the
/// result is exactly the clique.
pub fn clique_with_trees(k: usize, specs: &[TreeSpec]) -> Result<Graph> {
    if specs.len() != k {
        return Err(Error::invalid(format!("need {k} tree specs, got {}", specs.len())));
    }
    for spec in specs {
        spec.validate()?;
    }
    let n = k + specs.iter().map(|s| s.size - 1).sum::<usize>();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
        }
    }
    let mut next = k;
    for (i, spec) in specs.iter().enumerate() {
        // local label 0 -> clique vertex i, locals 1.. -> fresh ids
        let mut map = vec![0usize; spec.size];
        map[0] = i;
        for slot in map.iter_mut().skip(1) {
            *slot = next;
            next += 1;
        }
        for &(a, b) in &spec.edges {
            edges.push((map[a], map[b]));
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// `K_k` with `n - k` extra tree vertices dealt round-robin across the
/// clique vertices, each allotment forming a path.
pub fn balanced_clique_with_trees(k: usize, n: usize) -> Result<Graph> {
    if n < k || k == 0 {
        return Err(Error::invalid(format!("need n >= k >= 1, got n={n}, k={k}")));
    }
    let extra = n - k;
    let specs: Vec<TreeSpec> =
        (0..k).map(|i| TreeSpec::path(extra / k + usize::from(i < extra % k))).collect();
    clique_with_trees(k, &specs)
}
