//! Greedy-prediction machinery for coloring counts.
//!
//! For an ordering `π` of the vertices and a coloring `c`, the choice count
//! `X_π(c, v)` is the number of palette colors missing from the colored
//! back-neighborhood of `v`. Greedily coloring along `π` with uniform
//! choices visits each complete coloring `c` with probability
//! `1 / Π_v X_π(c, v)`, which gives both an unbiased estimator of the number
//! of colorings (sequential importance sampling) and, through the
//! nonnegativity of relative entropy, the upper bound
//! `P_G(k) <= exp(E_c[log X_π(c)])`.
//!
//! The per-vertex geometric mean `T(c, v)` over a random ordering depends
//! only on the neighbor color profile and is computed exactly by rank
//! decomposition: the rank of `v` among `N(v) ∪ {v}` is uniform, and the
//! preceding neighbors form a uniform subset of its neighborhood.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chromatic::{enumerate_colorings_with_guard, Coloring};
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexId};
use crate::{BigCount, DEFAULT_ENUMERATION_GUARD};

// ---------------------------------------------------------------------------
// orderings and partial colorings
// ---------------------------------------------------------------------------

/// A linear ordering of the vertices: `perm[position] = vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    perm: Vec<usize>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> VertexOrdering {
        VertexOrdering { perm: (0..n).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<VertexOrdering> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::invalid(format!("not a permutation of 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(VertexOrdering { perm })
    }

    /// Uniform random ordering (Fisher–Yates, fully seed-determined).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> VertexOrdering {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        VertexOrdering { perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Inverse map: `positions()[vertex] = position`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Back-neighborhood vertex masks: neighbors of each vertex that come
    /// earlier in this ordering.
    pub fn back_masks(&self, g: &Graph) -> Vec<u64> {
        let mut masks = vec![0u64; g.n()];
        let mut earlier = 0u64;
        for &v in &self.perm {
            masks[v] = g.adj_mask(v) & earlier;
            earlier |= 1 << v;
        }
        masks
    }
}

/// Proper coloring of a prefix of an ordering.
#[derive(Clone, Debug)]
pub struct PartialColoring {
    /// color per vertex id, 0 = uncolored
    color_of: Vec<u8>,
    /// number of colored vertices (a prefix of the ordering)
    assigned: usize,
}

impl PartialColoring {
    pub fn color(&self, v: usize) -> Option<u8> {
        match self.color_of[v] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn assigned(&self) -> usize {
        self.assigned
    }

    pub fn colors(&self) -> &[u8] {
        &self.color_of
    }
}

// ---------------------------------------------------------------------------
// choice counts
// ---------------------------------------------------------------------------

/// Number of palette colors missing from the colored back-neighborhood of
/// `v`: in `[1, k]` for extendable proper colorings, `[0, k]` in general.
pub fn x_pi<F>(g: &Graph, k: usize, pi: &VertexOrdering, color_of: F, v: VertexId) -> usize
where
    F: Fn(usize) -> Option<u8>,
{
    let pos = pi.positions();
    let pv = pos[v.0];
    let mut seen = 0u64;
    for u in g.neighbors(v.0) {
        if pos[u] < pv {
            if let Some(c) = color_of(u) {
                seen |= 1 << c;
            }
        }
    }
    k - (seen.count_ones() as usize).min(k)
}

/// Restricted variant: only back-neighbors inside `N*(v)` count.
pub fn x_pi_star<F>(
    g: &Graph,
    k: usize,
    pi: &VertexOrdering,
    color_of: F,
    v: VertexId,
    star: &StarNeighborhoods,
) -> usize
where
    F: Fn(usize) -> Option<u8>,
{
    let pos = pi.positions();
    let pv = pos[v.0];
    let mut seen = 0u64;
    for u in BitIter(g.adj_mask(v.0) & star.mask(v.0)) {
        if pos[u] < pv {
            if let Some(c) = color_of(u) {
                seen |= 1 << c;
            }
        }
    }
    k - (seen.count_ones() as usize).min(k)
}

/// Product of `X_π(c, v)` over all vertices of a total proper coloring.
pub fn x_pi_product(g: &Graph, k: usize, pi: &VertexOrdering, c: &Coloring) -> BigCount {
    let masks = pi.back_masks(g);
    let mut out = BigUint::one();
    for v in g.vertices() {
        let mut seen = 0u64;
        for u in BitIter(masks[v]) {
            seen |= 1 << c.color(u);
        }
        out *= BigUint::from(k - (seen.count_ones() as usize).min(k));
    }
    out
}

/// `exp(E_c[log X_π(c)])` with the expectation over the exact enumeration of
/// all proper `k`-colorings; by the overprediction inequality this is at
/// least `P_G(k)`.
pub fn overprediction_bound_exact(g: &Graph, k: usize, pi: &VertexOrdering) -> Result<f64> {
    overprediction_bound_exact_with_guard(g, k, pi, DEFAULT_ENUMERATION_GUARD)
}

pub fn overprediction_bound_exact_with_guard(
    g: &Graph,
    k: usize,
    pi: &VertexOrdering,
    guard: u64,
) -> Result<f64> {
    Ok(mean_log_x_pi(g, k, pi, guard)?.exp())
}

/// `E_c[log X_π(c)]` over all proper colorings (natural log).
pub fn mean_log_x_pi(g: &Graph, k: usize, pi: &VertexOrdering, guard: u64) -> Result<f64> {
    let masks = pi.back_masks(g);
    let ln = ln_table(k);
    let mut total = 0.0f64;
    let mut count = 0u64;
    for c in enumerate_colorings_with_guard(g, k, guard)? {
        let mut s = 0.0;
        for v in g.vertices() {
            let mut seen = 0u64;
            for u in BitIter(masks[v]) {
                seen |= 1 << c.color(u);
            }
            s += ln[k - (seen.count_ones() as usize).min(k)];
        }
        total += s;
        count += 1;
    }
    if count == 0 {
        return Err(Error::NoColorings { k });
    }
    Ok(total / count as f64)
}

fn ln_table(k: usize) -> Vec<f64> {
    (0..=k).map(|x| if x == 0 { f64::NEG_INFINITY } else { (x as f64).ln() }).collect()
}

// ---------------------------------------------------------------------------
// the greedy sampling process
// ---------------------------------------------------------------------------

/// One run of the greedy process: a maximal precoloring, the product of the
/// choice counts along the way, and whether all vertices got colored.
#[derive(Clone, Debug)]
pub struct GreedyRun {
    pub precoloring: PartialColoring,
    pub weight: BigCount,
    pub complete: bool,
}

/// Greedily colors along `π`, choosing uniformly among the available colors
/// at each vertex, until stuck or done. Getting stuck is a valid outcome.
pub fn greedy_precoloring_sample<R: Rng>(
    g: &Graph,
    k: usize,
    pi: &VertexOrdering,
    rng: &mut R,
) -> GreedyRun {
    let n = g.n();
    let mut color_of = vec![0u8; n];
    let mut weight = BigUint::one();
    let mut colored_mask = 0u64;
    for (i, &v) in pi.perm().iter().enumerate() {
        let mut seen = 0u64;
        for u in BitIter(g.adj_mask(v) & colored_mask) {
            seen |= 1 << color_of[u];
        }
        let x = k - (seen.count_ones() as usize).min(k);
        if x == 0 {
            return GreedyRun {
                precoloring: PartialColoring { color_of, assigned: i },
                weight,
                complete: false,
            };
        }
        let mut pick = rng.random_range(0..x);
        let mut chosen = 0u8;
        for c in 1..=k as u8 {
            if seen & (1 << c) == 0 {
                if pick == 0 {
                    chosen = c;
                    break;
                }
                pick -= 1;
            }
        }
        color_of[v] = chosen;
        colored_mask |= 1 << v;
        weight *= BigUint::from(x);
    }
    GreedyRun { precoloring: PartialColoring { color_of, assigned: n }, weight, complete: true }
}

/// Ordering policy for the estimator.
#[derive(Clone, Debug)]
pub enum PiMode {
    /// One ordering for every sample.
    Fixed(VertexOrdering),
    /// A fresh uniform ordering per sample.
    FreshPerSample,
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct SisEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Samples are split into fixed-size batches; batch `b` owns the ChaCha
/// stream `b` of the seed, so results are identical for any worker count.
const SIS_BATCH: u64 = 4096;

/// Unbiased sequential-importance-sampling estimate of `P_G(k)`: the mean of
/// `weight · 1{complete}` over greedy runs. Weights accumulate in arbitrary
/// precision; floating point enters only in the final mean and stderr.
pub fn sis_estimate(g: &Graph, k: usize, samples: u64, mode: &PiMode, seed: u64) -> SisEstimate {
    assert!(samples >= 1, "need at least one sample");
    let batches: Vec<(u64, u64)> = (0..samples.div_ceil(SIS_BATCH))
        .map(|b| (b, SIS_BATCH.min(samples - b * SIS_BATCH)))
        .collect();
    let (sum, sumsq) = batches
        .par_iter()
        .map(|&(b, len)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut sum = BigUint::zero();
            let mut sumsq = BigUint::zero();
            for _ in 0..len {
                let run = match mode {
                    PiMode::Fixed(pi) => greedy_precoloring_sample(g, k, pi, &mut rng),
                    PiMode::FreshPerSample => {
                        let pi = VertexOrdering::random(g.n(), &mut rng);
                        greedy_precoloring_sample(g, k, &pi, &mut rng)
                    }
                };
                if run.complete {
                    sumsq += &run.weight * &run.weight;
                    sum += run.weight;
                }
            }
            (sum, sumsq)
        })
        .reduce(|| (BigUint::zero(), BigUint::zero()), |(a, b), (c, d)| (a + c, b + d));

    let n = samples;
    let mean = ratio_to_f64(&sum, n);
    let stderr = if n < 2 {
        0.0
    } else {
        // n * sumsq - sum^2 >= 0, exactly
        let num = BigInt::from(sumsq) * BigInt::from(n) - BigInt::from(&sum * &sum);
        let num = num.to_f64().unwrap_or(0.0).max(0.0);
        (num / (n as f64 * n as f64 * (n - 1) as f64)).sqrt()
    };
    SisEstimate { mean, stderr, samples, seed }
}

fn ratio_to_f64(sum: &BigUint, n: u64) -> f64 {
    BigRational::new(BigInt::from(sum.clone()), BigInt::from(n)).to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// color profiles, T, and W
// ---------------------------------------------------------------------------

/// Per-vertex tuple of neighbor color-class sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorProfile {
    counts: Vec<u32>,
}

impl ColorProfile {
    pub fn new(counts: Vec<u32>) -> ColorProfile {
        ColorProfile { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn nonzero_classes(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Neighbor color profile of `v` under coloring `c` (length `k`).
pub fn profile_of(g: &Graph, c: &Coloring, v: VertexId) -> ColorProfile {
    let mut counts = vec![0u32; c.k()];
    for u in g.neighbors(v.0) {
        counts[c.color(u) as usize - 1] += 1;
    }
    ColorProfile { counts }
}

/// Restricted neighborhoods: a fixed `(k-1)`-subset of each vertex's
/// neighbors.
#[derive(Clone, Debug)]
pub struct StarNeighborhoods {
    sets: Vec<u64>,
    k: usize,
}

/// Deterministic selection rule for the restricted neighborhoods; the bound
/// machinery allows any rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarRule {
    LowestIndex,
    HighestIndex,
}

impl StarNeighborhoods {
    pub fn mask(&self, v: usize) -> u64 {
        self.sets[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Fixes `k - 1` neighbors per vertex; fails on any vertex of degree below
/// `k - 1` (such a graph cannot be k-critical).
pub fn make_star(g: &Graph, k: usize, rule: StarRule) -> Result<StarNeighborhoods> {
    let need = k - 1;
    let mut sets = vec![0u64; g.n()];
    for v in g.vertices() {
        let deg = g.degree(v);
        if deg < need {
            return Err(Error::DegreeTooSmall { v, degree: deg, needed: need });
        }
        let mut mask = 0u64;
        match rule {
            StarRule::LowestIndex => {
                for u in g.neighbors(v).take(need) {
                    mask |= 1 << u;
                }
            }
            StarRule::HighestIndex => {
                let nbrs: Vec<usize> = g.neighbors(v).collect();
                for &u in nbrs.iter().rev().take(need) {
                    mask |= 1 << u;
                }
            }
        }
        sets[v] = mask;
    }
    Ok(StarNeighborhoods { sets, k })
}

/// Color profile of `v` restricted to `N*(v)`; sums to `k - 1`.
pub fn profile_star(c: &Coloring, v: VertexId, star: &StarNeighborhoods) -> ColorProfile {
    let mut counts = vec![0u32; c.k()];
    for u in BitIter(star.mask(v.0)) {
        counts[c.color(u) as usize - 1] += 1;
    }
    ColorProfile { counts }
}

/// Binomial coefficients up to 64, exact in u128.
fn binomial_table(n: usize) -> Vec<Vec<u128>> {
    let mut c = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { 0 };
        }
    }
    c
}

/// `ways[t][h]`: the number of `t`-subsets of the profile multiset that hit
/// exactly `h` color classes.
fn distinct_ways(counts: &[u32]) -> Vec<Vec<u128>> {
    let d: usize = counts.iter().map(|&c| c as usize).sum();
    let classes = counts.iter().filter(|&&c| c > 0).count();
    let binom = binomial_table(d.max(1));
    let mut ways = vec![vec![0u128; classes + 1]; d + 1];
    ways[0][0] = 1;
    for &c in counts.iter().filter(|&&c| c > 0) {
        let c = c as usize;
        let mut next = vec![vec![0u128; classes + 1]; d + 1];
        for t in 0..=d {
            for h in 0..=classes {
                let w = ways[t][h];
                if w == 0 {
                    continue;
                }
                next[t][h] += w; // take nothing from this class
                for take in 1..=c.min(d - t) {
                    next[t + take][h + 1] += w * binom[c][take];
                }
            }
        }
        ways = next;
    }
    ways
}

/// Exact law of the number of color classes hit by a uniform random
/// `t`-subset of the profile multiset. Index `s` of the result is the
/// probability of hitting exactly `s` classes.
pub fn distinct_color_distribution(profile: &ColorProfile, t: usize) -> Result<Vec<BigRational>> {
    let d = profile.total() as usize;
    if t > d {
        return Err(Error::invalid(format!("subset size {t} exceeds profile total {d}")));
    }
    let ways = distinct_ways(profile.counts());
    let binom = binomial_table(d.max(1));
    let denom = BigInt::from(binom[d][t]);
    Ok(ways[t]
        .iter()
        .map(|&w| BigRational::new(BigInt::from(w), denom.clone()))
        .collect())
}

/// Exact geometric mean of the choice count `X_π(c, v)` over a uniform
/// random ordering, as a function of the color profile alone:
/// `exp( (1/(d+1)) Σ_t E[ln(k - D_t)] )` with `D_t` the distinct-class law.
/// When all `k` classes are hit with positive probability the geometric mean
/// is zero.
pub fn t_exact(profile: &ColorProfile, k: usize) -> f64 {
    assert!(
        profile.counts().len() <= k,
        "profile has more classes than palette colors"
    );
    let d = profile.total() as usize;
    let ways = distinct_ways(profile.counts());
    let binom = binomial_table(d.max(1));
    let mut mean_ln = 0.0f64;
    for (t, row) in ways.iter().enumerate() {
        let denom = binom[d][t] as f64;
        let mut inner = 0.0f64;
        for (h, &w) in row.iter().enumerate() {
            if w == 0 {
                continue;
            }
            if h >= k {
                return 0.0; // ln 0 with positive probability
            }
            inner += (w as f64 / denom) * ((k - h) as f64).ln();
        }
        mean_ln += inner;
    }
    (mean_ln / (d + 1) as f64).exp()
}

/// Harmonic upper bound `W = Σ_i 1/(c_i + 1)` over the `k` classes, exact.
pub fn w_of(profile: &ColorProfile, k: usize) -> BigRational {
    assert!(
        profile.counts().len() <= k,
        "profile has more classes than palette colors"
    );
    let mut sum = BigRational::from_integer(BigInt::from(k - profile.counts().len()));
    for &c in profile.counts() {
        sum += BigRational::new(BigInt::one(), BigInt::from(c + 1));
    }
    sum
}

/// Memoizing wrapper around [`t_exact`]; the value only depends on the
/// multiset of counts.
pub struct TCache {
    k: usize,
    cache: HashMap<Vec<u32>, f64>,
}

impl TCache {
    pub fn new(k: usize) -> TCache {
        TCache { k, cache: HashMap::new() }
    }

    pub fn get(&mut self, profile: &ColorProfile) -> f64 {
        let mut key: Vec<u32> = profile.counts().iter().copied().filter(|&c| c > 0).collect();
        key.sort_unstable();
        let k = self.k;
        *self
            .cache
            .entry(key.clone())
            .or_insert_with(|| t_exact(&ColorProfile::new(key), k))
    }
}

/// `Π_v exp(E_c[log T(c, v)])` over the exact coloring enumeration — the
/// ordering-averaged overprediction bound, always at least `P_G(k)`.
pub fn global_t_bound(g: &Graph, k: usize) -> Result<f64> {
    global_t_bound_with_guard(g, k, DEFAULT_ENUMERATION_GUARD)
}

pub fn global_t_bound_with_guard(g: &Graph, k: usize, guard: u64) -> Result<f64> {
    let mut cache = TCache::new(k);
    let mut sum_ln = vec![0.0f64; g.n()];
    let mut count = 0u64;
    for c in enumerate_colorings_with_guard(g, k, guard)? {
        for v in g.vertices() {
            let t = cache.get(&profile_of(g, &c, VertexId(v)));
            sum_ln[v] += t.ln();
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::NoColorings { k });
    }
    Ok(sum_ln.iter().map(|s| s / count as f64).sum::<f64>().exp())
}
