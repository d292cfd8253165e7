//! Exact chromatic polynomials, coloring counts, and coloring enumeration.
//!
//! The polynomial is computed by deletion–contraction with shortcuts for
//! edgeless graphs, trees, and cliques. Connected components multiply, and a
//! cyclic component is first reduced to its 2-core: every peeled degree-one
//! vertex contributes a factor of `x - 1`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexId};
use crate::DEFAULT_ENUMERATION_GUARD;

// ---------------------------------------------------------------------------
// polynomial plumbing (coefficients ascending by degree)
// ---------------------------------------------------------------------------

type Coeffs = Vec<BigInt>;

fn poly_one() -> Coeffs {
    vec![BigInt::one()]
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Coeffs {
    let len = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    out
}

/// `x (x-1)^(n-1)` — the chromatic polynomial of any tree on `n` vertices.
fn tree_poly(n: usize) -> Coeffs {
    poly_mul(&[BigInt::zero(), BigInt::one()], &x_minus_one_pow(n - 1))
}

fn x_minus_one_pow(t: usize) -> Coeffs {
    let mut out = poly_one();
    let factor = vec![-BigInt::one(), BigInt::one()];
    for _ in 0..t {
        out = poly_mul(&out, &factor);
    }
    out
}

/// Falling factorial `x (x-1) ... (x-n+1)` — chromatic polynomial of `K_n`.
fn falling_factorial_poly(n: usize) -> Coeffs {
    let mut out = poly_one();
    for i in 0..n {
        let factor = vec![-BigInt::from(i), BigInt::one()];
        out = poly_mul(&out, &factor);
    }
    out
}

fn poly_eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

// ---------------------------------------------------------------------------
// public polynomial type
// ---------------------------------------------------------------------------

/// Chromatic polynomial of a graph on `n` vertices: monic, degree `n`,
/// integer coefficients alternating in sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticPolynomial {
    coeffs: Coeffs,
}

impl ChromaticPolynomial {
    /// Coefficients ascending by degree; length `n + 1`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        poly_eval(&self.coeffs, x)
    }

    /// Number of proper colorings with `k` colors.
    pub fn count(&self, k: usize) -> BigUint {
        let v = self.eval(&BigInt::from(k));
        debug_assert!(!v.is_negative(), "chromatic polynomial negative at {k}");
        v.to_biguint().unwrap_or_default()
    }

    /// Least `j >= 1` with a positive coloring count (0 for the empty graph).
    pub fn chromatic_number(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        (1..=self.degree())
            .find(|&j| !self.count(j).is_zero())
            .expect("every graph is n-colorable")
    }

    fn validate(&self) {
        let n = self.degree();
        debug_assert!(self.coeffs[n].is_one(), "not monic");
        for (i, c) in self.coeffs.iter().enumerate() {
            // coefficient of x^i carries sign (-1)^(n-i) or vanishes
            if (n - i).is_multiple_of(2) {
                debug_assert!(!c.is_negative(), "sign pattern broken at degree {i}");
            } else {
                debug_assert!(!c.is_positive(), "sign pattern broken at degree {i}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// deletion–contraction
// ---------------------------------------------------------------------------

struct DelCon {
    memo: HashMap<Graph, Coeffs>,
}

impl DelCon {
    fn new() -> Self {
        DelCon { memo: HashMap::new() }
    }

    /// Entry point: splits components, factors trees and pendant forests.
    fn poly(&mut self, g: &Graph) -> Coeffs {
        if g.n() == 0 {
            return poly_one();
        }
        let comps = g.components();
        if comps.len() == 1 {
            return self.connected_poly(g);
        }
        let mut out = poly_one();
        for mask in comps {
            out = poly_mul(&out, &self.connected_poly(&g.induced(mask)));
        }
        out
    }

    fn connected_poly(&mut self, g: &Graph) -> Coeffs {
        let n = g.n();
        if g.m() == n - 1 {
            return tree_poly(n);
        }
        if g.is_clique() {
            return falling_factorial_poly(n);
        }
        // cyclic: peel to the 2-core, each peeled vertex contributes (x-1)
        let (core, removed) = g.two_core();
        if removed.is_empty() {
            self.core_poly(g)
        } else {
            poly_mul(&self.core_poly(&core), &x_minus_one_pow(removed.len()))
        }
    }

    /// Connected, minimum degree >= 2, not a clique.
    fn core_poly(&mut self, g: &Graph) -> Coeffs {
        if g.is_clique() {
            return falling_factorial_poly(g.n());
        }
        if let Some(p) = self.memo.get(g) {
            return p.clone();
        }
        let (u, v) = pivot_edge(g);
        let deleted = g.delete_edge(VertexId(u), VertexId(v)).expect("pivot is an edge");
        let contracted = g.contract_edge(VertexId(u), VertexId(v)).expect("pivot is an edge");
        let p = poly_sub(&self.poly(&deleted), &self.poly(&contracted));
        self.memo.insert(g.clone(), p.clone());
        p
    }
}

/// Edge inside the densest neighborhood: maximal common-neighbor count,
/// lowest `(u, v)` on ties.
fn pivot_edge(g: &Graph) -> (usize, usize) {
    let mut best = None;
    let mut best_common = 0u32;
    for (u, v) in g.edges() {
        let common = (g.adj_mask(u) & g.adj_mask(v)).count_ones();
        if best.is_none() || common > best_common {
            best = Some((u, v));
            best_common = common;
        }
    }
    best.expect("core graph has edges")
}

/// Exact chromatic polynomial via memoized deletion–contraction.
pub fn chromatic_polynomial(g: &Graph) -> ChromaticPolynomial {
    let coeffs = DelCon::new().poly(g);
    debug_assert_eq!(coeffs.len(), g.n() + 1);
    let p = ChromaticPolynomial { coeffs };
    p.validate();
    p
}

/// `P_G(k)`, exactly.
pub fn count_colorings(g: &Graph, k: usize) -> BigUint {
    chromatic_polynomial(g).count(k)
}

/// Chromatic number: least `j` with `P_G(j) > 0`, cross-checked against a
/// greedy upper bound.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let chi = chromatic_polynomial(g).chromatic_number();
    let greedy = greedy_color_count(g);
    assert!(
        chi <= greedy,
        "polynomial chromatic number {chi} exceeds greedy bound {greedy}"
    );
    chi
}

/// Number of colors used by first-fit along the reverse elimination order.
fn greedy_color_count(g: &Graph) -> usize {
    let mut order: Vec<usize> = g.degeneracy_order().into_iter().map(|v| v.0).collect();
    order.reverse();
    let mut color = vec![0usize; g.n()];
    let mut used = 0usize;
    for &v in &order {
        let mut taken = 0u64;
        for u in g.neighbors(v) {
            if color[u] > 0 {
                taken |= 1 << (color[u] - 1);
            }
        }
        let c = (taken.trailing_ones() + 1) as usize;
        color[v] = c;
        used = used.max(c);
    }
    used
}

/// Backtracking feasibility: does a proper `k`-coloring exist?
pub fn is_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut order: Vec<usize> = g.degeneracy_order().into_iter().map(|v| v.0).collect();
    order.reverse();
    let mut color = vec![0u8; n];
    colorable_rec(g, k as u8, &order, 0, 0, &mut color)
}

fn colorable_rec(g: &Graph, k: u8, order: &[usize], pos: usize, max_used: u8, color: &mut [u8]) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let mut taken = 0u64;
    for u in g.neighbors(v) {
        if color[u] > 0 {
            taken |= 1 << color[u];
        }
    }
    // new colors are interchangeable, so allow at most one fresh color
    let limit = k.min(max_used + 1);
    for c in 1..=limit {
        if taken & (1 << c) == 0 {
            color[v] = c;
            if colorable_rec(g, k, order, pos + 1, max_used.max(c), color) {
                color[v] = 0;
                return true;
            }
            color[v] = 0;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// colorings
// ---------------------------------------------------------------------------

/// Total proper coloring with colors `1..=k` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
    k: usize,
}

impl Coloring {
    /// Validates properness and color range.
    pub fn new(g: &Graph, colors: Vec<u8>, k: usize) -> Result<Coloring> {
        if colors.len() != g.n() {
            return Err(Error::ImproperColoring {
                k,
                reason: format!("{} colors for {} vertices", colors.len(), g.n()),
            });
        }
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 || c as usize > k {
                return Err(Error::ImproperColoring {
                    k,
                    reason: format!("vertex {v} has color {c} outside 1..={k}"),
                });
            }
        }
        for (u, v) in g.edges() {
            if colors[u] == colors[v] {
                return Err(Error::ImproperColoring {
                    k,
                    reason: format!("edge ({u}, {v}) is monochromatic"),
                });
            }
        }
        Ok(Coloring { colors, k })
    }

    #[inline(always)]
    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Size of color class `i` (colors are `1..=k`).
    pub fn class_size(&self, i: u8) -> usize {
        self.colors.iter().filter(|&&c| c == i).count()
    }
}

/// Streams every proper `k`-coloring exactly once. Fails fast when the exact
/// count exceeds `guard` — callers must sample instead.
pub fn enumerate_colorings(g: &Graph, k: usize) -> Result<ColoringIter> {
    enumerate_colorings_with_guard(g, k, DEFAULT_ENUMERATION_GUARD)
}

pub fn enumerate_colorings_with_guard(g: &Graph, k: usize, guard: u64) -> Result<ColoringIter> {
    let count = count_colorings(g, k);
    if count > BigUint::from(guard) {
        return Err(Error::GuardExceeded { count, guard });
    }
    Ok(ColoringIter::new(g.clone(), k))
}

/// Backtracking enumerator over proper colorings, visiting vertices in
/// reverse elimination (degeneracy) order so each vertex sees as many
/// colored neighbors as possible.
pub struct ColoringIter {
    k: u8,
    order: Vec<usize>,
    /// per position: neighbors of `order[pos]` that appear earlier, as a
    /// vertex mask
    earlier: Vec<u64>,
    /// current color per position (0 = unassigned)
    chosen: Vec<u8>,
    /// current color per vertex id
    color_of: Vec<u8>,
    pos: usize,
    state: IterState,
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl ColoringIter {
    fn new(g: Graph, k: usize) -> ColoringIter {
        let mut order: Vec<usize> = g.degeneracy_order().into_iter().map(|v| v.0).collect();
        order.reverse();
        let mut seen = 0u64;
        let mut earlier = Vec::with_capacity(order.len());
        for &v in &order {
            earlier.push(g.adj_mask(v) & seen);
            seen |= 1 << v;
        }
        let n = g.n();
        ColoringIter {
            k: k.min(u8::MAX as usize) as u8,
            order,
            earlier,
            chosen: vec![0; n],
            color_of: vec![0; n],
            pos: 0,
            state: IterState::Fresh,
        }
    }
}

impl Iterator for ColoringIter {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.state == IterState::Done {
            return None;
        }
        let n = self.order.len();
        if n == 0 {
            // exactly one (empty) coloring
            self.state = IterState::Done;
            return Some(Coloring { colors: Vec::new(), k: self.k as usize });
        }
        if self.state == IterState::Fresh {
            self.state = IterState::Running;
            self.pos = 0;
        } else {
            // resume by advancing the color of the deepest position
            self.pos = n - 1;
        }
        loop {
            let v = self.order[self.pos];
            let mut taken = 0u64;
            for u in BitIter(self.earlier[self.pos]) {
                taken |= 1 << self.color_of[u];
            }
            let mut c = self.chosen[self.pos] + 1;
            while c <= self.k && taken & (1 << c) != 0 {
                c += 1;
            }
            if c <= self.k {
                self.chosen[self.pos] = c;
                self.color_of[v] = c;
                if self.pos + 1 == n {
                    return Some(Coloring { colors: self.color_of.clone(), k: self.k as usize });
                }
                self.pos += 1;
            } else {
                self.chosen[self.pos] = 0;
                self.color_of[v] = 0;
                if self.pos == 0 {
                    self.state = IterState::Done;
                    return None;
                }
                self.pos -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criticality::{moser_spindle, mycielskian_triangle};
    use num_traits::ToPrimitive;

    /// Independent oracle: count proper colorings over all k^n assignments.
    fn brute_force_count(g: &Graph, k: usize) -> u64 {
        let n = g.n();
        if k == 0 {
            return u64::from(n == 0);
        }
        let mut count = 0u64;
        let mut assignment = vec![0usize; n];
        'outer: loop {
            let proper = g.edges().iter().all(|&(u, v)| assignment[u] != assignment[v]);
            if proper {
                count += 1;
            }
            for i in 0..n {
                assignment[i] += 1;
                if assignment[i] < k {
                    continue 'outer;
                }
                assignment[i] = 0;
            }
            return count;
        }
    }

    #[test]
    fn k4_polynomial() {
        let p = chromatic_polynomial(&Graph::complete(4).unwrap());
        assert_eq!(p.count(4), BigUint::from(24u32));
        assert_eq!(p.count(3), BigUint::zero());
        // x(x-1)(x-2)(x-3) = x^4 - 6x^3 + 11x^2 - 6x
        let expect: Vec<BigInt> =
            [0, -6, 11, -6, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(p.coeffs(), &expect[..]);
    }

    #[test]
    fn tree_shortcut_matches_brute_force() {
        let tree = Graph::from_edge_list(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        let p = chromatic_polynomial(&tree);
        for k in 0..=4 {
            assert_eq!(p.count(k).to_u64().unwrap(), brute_force_count(&tree, k));
        }
        assert_eq!(p.count(3), BigUint::from(3u32 * 16));
    }

    #[test]
    fn c5_at_three_colors() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(brute_force_count(&c5, 3), 30);
        assert_eq!(count_colorings(&c5, 3), BigUint::from(30u32));
    }

    #[test]
    fn named_graph_counts() {
        assert_eq!(count_colorings(&moser_spindle(), 4), BigUint::from(384u32));
        assert_eq!(count_colorings(&mycielskian_triangle(), 4), BigUint::from(312u32));
    }

    #[test]
    fn clique_with_pendant_tree_counts() {
        // K4 plus a path of 3 extra vertices: 24 * 3^3 four-colorings
        let g = Graph::from_edge_list(
            7,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(count_colorings(&g, 4), BigUint::from(24u32 * 27));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::complete(4).unwrap()), 4);
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()), 3);
        assert_eq!(chromatic_number(&moser_spindle()), 4);
        assert_eq!(chromatic_number(&Graph::path(6).unwrap()), 2);
    }

    #[test]
    fn small_graphs_match_brute_force() {
        let graphs = [
            Graph::cycle(6).unwrap(),
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
                .unwrap(),
            Graph::complete(5).unwrap(),
            Graph::from_edge_list(7, &[(0, 1), (1, 2), (3, 4), (5, 6), (0, 6), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            for k in 0..=4 {
                assert_eq!(
                    count_colorings(g, k).to_u64().unwrap(),
                    brute_force_count(g, k),
                    "graph {g:?} at k={k}"
                );
            }
        }
    }

    #[test]
    fn deletion_contraction_identity() {
        let g = moser_spindle();
        let pg = chromatic_polynomial(&g);
        for (u, v) in g.edges() {
            let pd = chromatic_polynomial(&g.delete_edge(VertexId(u), VertexId(v)).unwrap());
            let pc = chromatic_polynomial(&g.contract_edge(VertexId(u), VertexId(v)).unwrap());
            for x in 1..=g.n() {
                let x = BigInt::from(x);
                assert_eq!(pg.eval(&x), pd.eval(&x) - pc.eval(&x));
            }
        }
    }

    #[test]
    fn disjoint_union_multiplies() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
        let triangle = Graph::complete(3).unwrap();
        let p3 = Graph::path(3).unwrap();
        for k in 0..=5 {
            assert_eq!(
                count_colorings(&g, k),
                count_colorings(&triangle, k) * count_colorings(&p3, k)
            );
        }
    }

    #[test]
    fn enumerate_k3_with_three_colors() {
        let k3 = Graph::complete(3).unwrap();
        let all: Vec<_> = enumerate_colorings(&k3, 3).unwrap().collect();
        assert_eq!(all.len(), 6);
        let mut seen = std::collections::HashSet::new();
        for c in &all {
            assert!(Coloring::new(&k3, c.colors().to_vec(), 3).is_ok());
            assert!(seen.insert(c.colors().to_vec()));
        }
    }

    #[test]
    fn enumerate_edgeless_pair() {
        let g = Graph::edgeless(2).unwrap();
        assert_eq!(enumerate_colorings(&g, 2).unwrap().count(), 4);
    }

    #[test]
    fn enumerate_moser_stream_length() {
        let count = enumerate_colorings(&moser_spindle(), 4).unwrap().count();
        assert_eq!(count, 384);
    }

    #[test]
    fn enumeration_guard_refuses() {
        let g = Graph::edgeless(10).unwrap();
        match enumerate_colorings_with_guard(&g, 10, 1000) {
            Err(Error::GuardExceeded { guard: 1000, .. }) => {}
            Err(other) => panic!("expected guard refusal, got {other:?}"),
            Ok(_) => panic!("expected guard refusal, got an iterator"),
        }
    }

    #[test]
    fn is_colorable_agrees_with_polynomial() {
        for g in [
            Graph::complete(5).unwrap(),
            Graph::cycle(7).unwrap(),
            moser_spindle(),
            mycielskian_triangle(),
        ] {
            for k in 0..=5 {
                assert_eq!(is_colorable(&g, k), !count_colorings(&g, k).is_zero());
            }
        }
    }

    #[test]
    fn improper_coloring_rejected() {
        let k2 = Graph::complete(2).unwrap();
        assert!(Coloring::new(&k2, vec![1, 1], 2).is_err());
        assert!(Coloring::new(&k2, vec![1, 3], 2).is_err());
        assert!(Coloring::new(&k2, vec![1, 2], 2).is_ok());
    }

    #[test]
    fn chromatic_number_bounds() {
        for g in [Graph::cycle(6).unwrap(), moser_spindle(), Graph::complete(6).unwrap()] {
            let chi = chromatic_number(&g);
            assert!(chi <= 1 + g.max_degree());
            assert_eq!(chi == g.n(), g.is_clique());
        }
    }
}
