//! The linear program behind the coloring-count ceiling, its inequality
//! sweeps, the k = 4 refinement, and the per-graph bound chain.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::chromatic::{chromatic_polynomial, enumerate_colorings_with_guard};
use crate::criticality::radiant_vertices_unchecked;
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexId};
use crate::overprediction::{
    make_star, profile_star, ColorProfile, StarRule, TCache, VertexOrdering,
};
use crate::verify::tomescu_rhs;
use crate::BigCount;

// ---------------------------------------------------------------------------
// the linear program
// ---------------------------------------------------------------------------

/// Instance of the harmonic-objective program: maximize `Σ a_j / (j+1)`
/// over nonnegative `a_j` with `Σ a_j = x`, `Σ j a_j = k - 1`,
/// `Σ j² a_j <= s`.
#[derive(Clone, Copy, Debug)]
pub struct LpInstance {
    x: u32,
    k: u32,
    s: f64,
}

impl LpInstance {
    pub fn new(x: u32, k: u32, s: f64) -> Result<LpInstance> {
        if k < 4 || x < k {
            return Err(Error::invalid(format!("need x >= k >= 4, got x={x}, k={k}")));
        }
        let k1 = (k - 1) as f64;
        if !(k1..=3.0 * k1).contains(&s) {
            return Err(Error::invalid(format!(
                "second moment s={s} outside [k-1, 3k-3] = [{}, {}]",
                k1,
                3.0 * k1
            )));
        }
        Ok(LpInstance { x, k, s })
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// Piecewise closed form of the program's optimum.
pub fn lp_closed_form(inst: &LpInstance) -> f64 {
    let x = inst.x as f64;
    let k1 = (inst.k - 1) as f64;
    if inst.s <= 2.0 * k1 {
        x - (4.0 * k1 - inst.s) / 6.0
    } else {
        x - (6.0 * k1 - inst.s) / 12.0
    }
}

/// Basic-feasible-solution enumeration result.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: f64,
    /// All support pairs attaining the optimum (ties within 1e-12).
    pub argmax: Vec<(u32, u32)>,
    /// Solved `(a_0, a_{j0}, a_{j1})` for the first optimal pair.
    pub coefficients: (f64, f64, f64),
}

/// Enumerates basic feasible solutions supported on `{0, j0, j1}` with
/// `0 < j0 < j1 <= jmax` and `j0 <= s/(k-1) <= j1`, maximizing
/// `x - ((k-1)(j0+j1+1) - s) / ((j0+1)(j1+1))`.
pub fn lp_brute_force(inst: &LpInstance, jmax: u32) -> Result<LpSolution> {
    if jmax < 3 {
        return Err(Error::invalid(format!("jmax must be at least 3, got {jmax}")));
    }
    lp_support_enumeration(inst.x, inst.k, inst.s, jmax)
}

/// Support enumeration without the instance range checks; used for measured
/// second moments that may exceed `3k - 3`.
fn lp_support_enumeration(x: u32, k: u32, s: f64, jmax: u32) -> Result<LpSolution> {
    let xf = x as f64;
    let k1 = (k - 1) as f64;
    let ratio = s / k1;
    let mut best: Option<LpSolution> = None;
    for j0 in 1..jmax {
        for j1 in (j0 + 1)..=jmax {
            if !((j0 as f64) <= ratio && ratio <= j1 as f64) {
                continue;
            }
            let value = xf
                - (k1 * (j0 + j1 + 1) as f64 - s) / ((j0 + 1) as f64 * (j1 + 1) as f64);
            match &mut best {
                None => {
                    best = Some(LpSolution {
                        value,
                        argmax: vec![(j0, j1)],
                        coefficients: lp_coefficients(xf, k1, s, j0, j1)?,
                    })
                }
                Some(sol) if value > sol.value + 1e-12 => {
                    sol.value = value;
                    sol.argmax = vec![(j0, j1)];
                    sol.coefficients = lp_coefficients(xf, k1, s, j0, j1)?;
                }
                Some(sol) if (value - sol.value).abs() <= 1e-12 => sol.argmax.push((j0, j1)),
                Some(_) => {}
            }
        }
    }
    best.ok_or_else(|| {
        Error::invalid(format!("no admissible support pair for s={s}, k={k}, jmax={jmax}"))
    })
}

fn lp_coefficients(x: f64, k1: f64, s: f64, j0: u32, j1: u32) -> Result<(f64, f64, f64)> {
    let (j0f, j1f) = (j0 as f64, j1 as f64);
    let a_j0 = (k1 * j1f - s) / (j0f * j1f - j0f * j0f);
    let a_j1 = (s - k1 * j0f) / (j1f * j1f - j0f * j1f);
    let a_0 = x - a_j0 - a_j1;
    for a in [a_0, a_j0, a_j1] {
        if a < -1e-9 {
            return Err(Error::InvariantViolation(format!(
                "negative basic solution {a} at support ({j0}, {j1})"
            )));
        }
    }
    Ok((a_0, a_j0, a_j1))
}

// ---------------------------------------------------------------------------
// closed-form ingredients of the main bound
// ---------------------------------------------------------------------------

/// `(k!)^(1/k)` — the ceiling on the ordering geometric mean of the choice
/// count at a radiant vertex.
pub fn radiant_t_bound(k: usize) -> f64 {
    let ln_fact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
    (ln_fact / k as f64).exp()
}

/// Second moment fed to the program under the counterexample hypothesis:
/// `S = (k-1) + n(k-2)/(n-k)`, for `n > k`.
pub fn s_for(n: usize, k: usize) -> Result<f64> {
    if n <= k {
        return Err(Error::invalid(format!("need n > k, got n={n}, k={k}")));
    }
    Ok((k - 1) as f64 + (n * (k - 2)) as f64 / (n - k) as f64)
}

/// Per-vertex base of the large-n bound, for `n >= 2k - 1`:
/// `(7k+5)/12 + n(k-2)/(12(n-k))` up to `n = k² - k`, then
/// `(k+1)/2 + n(k-2)/(6(n-k))`.
pub fn theorem9_rhs(n: usize, k: usize) -> Result<f64> {
    if n < 2 * k - 1 {
        return Err(Error::invalid(format!("need n >= 2k-1, got n={n}, k={k}")));
    }
    let nf = n as f64;
    let kf = k as f64;
    if n <= k * k - k {
        Ok((7.0 * kf + 5.0) / 12.0 + nf * (kf - 2.0) / (12.0 * (nf - kf)))
    } else {
        Ok((kf + 1.0) / 2.0 + nf * (kf - 2.0) / (6.0 * (nf - kf)))
    }
}

/// Sweep of the per-vertex bound against `k - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem9Sweep {
    pub kmax: usize,
    /// `(k, n)` with `k >= 5` where the bound fails; must be empty.
    pub violations: Vec<(usize, usize)>,
    /// `k` where the n -> infinity limit fails; must be empty.
    pub limit_violations: Vec<usize>,
    /// `n` where the k = 4 bound fails; expected to be exactly `7..=12`.
    pub k4_violations: Vec<usize>,
    pub pass: bool,
}

/// Verifies `theorem9_rhs(n, k) < k - 1` for all `5 <= k <= kmax` and
/// `2k - 1 <= n <= max(k² - k, 4k)`, the limiting inequality
/// `(k+1)/2 + (k-2)/6 < k - 1`, and records the k = 4 diagnostic range.
pub fn sweep_theorem9(kmax: usize) -> Theorem9Sweep {
    assert!(kmax >= 5, "sweep needs kmax >= 5");
    let mut violations = Vec::new();
    let mut limit_violations = Vec::new();
    for k in 5..=kmax {
        for n in (2 * k - 1)..=(k * k - k).max(4 * k) {
            if theorem9_rhs(n, k).expect("n in range") >= (k - 1) as f64 {
                violations.push((k, n));
            }
        }
        let limit = (k as f64 + 1.0) / 2.0 + (k as f64 - 2.0) / 6.0;
        if limit >= (k - 1) as f64 {
            limit_violations.push(k);
        }
    }
    let k4_violations: Vec<usize> = (7..=16)
        .filter(|&n| theorem9_rhs(n, 4).expect("n in range") >= 3.0)
        .collect();
    let pass = violations.is_empty()
        && limit_violations.is_empty()
        && k4_violations == (7..=12).collect::<Vec<_>>();
    Theorem9Sweep { kmax, violations, limit_violations, k4_violations, pass }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCountSweep {
    pub kmax: usize,
    /// `(k, n)` where the quadratic goes positive; must be empty.
    pub violations: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Confirms `n² + (1-3k) n + (2k² - k + 1) <= 0` for `4 <= k <= kmax` and
/// `k + 1 <= n <= 2k - 2` — no room for small counterexamples.
pub fn sweep_edge_count(kmax: usize) -> EdgeCountSweep {
    assert!(kmax >= 4, "sweep needs kmax >= 4");
    let mut violations = Vec::new();
    for k in 4..=kmax {
        for n in (k + 1)..=(2 * k - 2) {
            let (n_i, k_i) = (n as i64, k as i64);
            let q = n_i * n_i + (1 - 3 * k_i) * n_i + (2 * k_i * k_i - k_i + 1);
            if q > 0 {
                violations.push((k, n));
            }
        }
    }
    EdgeCountSweep { kmax, pass: violations.is_empty(), violations }
}

// ---------------------------------------------------------------------------
// k = 4 refinement
// ---------------------------------------------------------------------------

/// Classification of a restricted profile (three neighbors, four colors) by
/// the number of distinct colors it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum K4Class {
    S1,
    S2,
    S3,
}

pub fn k4_class_of(profile: &ColorProfile) -> Result<K4Class> {
    if profile.total() != 3 {
        return Err(Error::invalid(format!(
            "restricted profile must sum to 3, got {}",
            profile.total()
        )));
    }
    match profile.nonzero_classes() {
        1 => Ok(K4Class::S1),
        2 => Ok(K4Class::S2),
        3 => Ok(K4Class::S3),
        _ => unreachable!("three elements span at most three classes"),
    }
}

/// Exact ordering geometric mean of the restricted choice count per class.
pub fn k4_tstar(class: K4Class) -> f64 {
    match class {
        K4Class::S1 => 4f64.powf(0.25) * 3f64.powf(0.75),
        K4Class::S2 => 4f64.powf(0.25) * 3f64.powf(1.0 / 3.0) * 2f64.powf(5.0 / 12.0),
        K4Class::S3 => 24f64.powf(0.25),
    }
}

/// Maximizer of `Σ s_j ln T*_j` over `s_j >= 0` with `s1 + s2 + s3 = n - 4`
/// and `3 s1 + s2 <= s_constraint`, by vertex enumeration of the polytope.
pub fn k4_s_lp(n: usize, s_constraint: f64) -> (f64, f64, f64) {
    assert!(n >= 4, "need n >= 4");
    let m = (n - 4) as f64;
    let c = s_constraint;
    let (t1, t2, t3) =
        (k4_tstar(K4Class::S1).ln(), k4_tstar(K4Class::S2).ln(), k4_tstar(K4Class::S3).ln());
    let mut candidates: Vec<(f64, f64, f64)> = vec![(0.0, 0.0, m)];
    if 3.0 * m <= c {
        candidates.push((m, 0.0, 0.0));
    }
    if m <= c {
        candidates.push((0.0, m, 0.0));
    }
    let v = ((c - m) / 2.0, (3.0 * m - c) / 2.0, 0.0);
    if v.0 >= 0.0 && v.1 >= 0.0 {
        candidates.push(v);
    }
    if m - c / 3.0 >= 0.0 {
        candidates.push((c / 3.0, 0.0, m - c / 3.0));
    }
    if m - c >= 0.0 {
        candidates.push((0.0, c, m - c));
    }
    candidates
        .into_iter()
        .max_by(|a, b| {
            let fa = a.0 * t1 + a.1 * t2 + a.2 * t3;
            let fb = b.0 * t1 + b.1 * t2 + b.2 * t3;
            fa.partial_cmp(&fb).expect("finite objective")
        })
        .expect("polytope is nonempty")
}

/// `4! · 3^((2n-3)/6) · 2^((11n-54)/12)` — the refined ceiling for a
/// hypothetical k = 4 counterexample on `n >= 6` vertices.
pub fn k4_final_bound(n: usize) -> f64 {
    k4_final_bound_ln(n).exp()
}

pub fn k4_final_bound_ln(n: usize) -> f64 {
    let nf = n as f64;
    24f64.ln() + (2.0 * nf - 3.0) / 6.0 * 3f64.ln() + (11.0 * nf - 54.0) / 12.0 * 2f64.ln()
}

/// Strict comparison of the refined ceiling against `4! · 3^(n-4)`, in log
/// space so arbitrarily large `n` are exact.
pub fn k4_beats_trivial(n: usize) -> bool {
    k4_final_bound_ln(n) < 24f64.ln() + (n as f64 - 4.0) * 3f64.ln()
}

// ---------------------------------------------------------------------------
// the bound chain
// ---------------------------------------------------------------------------

/// Ordering policy for the per-ordering bound stage.
#[derive(Clone, Debug)]
pub enum PiSelection {
    /// `count` uniform orderings drawn from the seed.
    Sampled { count: usize, seed: u64 },
    /// Every ordering of the vertices (guarded to n <= 8).
    AllOrderings,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundStage {
    pub name: String,
    pub value: f64,
    pub certified: bool,
}

/// Star-restricted statistics measured over the exact coloring enumeration;
/// exact rationals, reported as floats.
#[derive(Clone, Debug)]
pub struct MeasuredStarStats {
    /// `a_j = E*[#{i : c_i*(v) = j}]` for `j = 0..k`, over non-radiant `(c, v)`.
    pub a: Vec<BigRational>,
    /// Measured second moment `Σ j² a_j`.
    pub s: f64,
    /// `E*[W*(c, v)]`.
    pub w_star_mean: BigRational,
    /// `E*[Σ_i C(c_i*(v), 2)]` — the measured pair statistic.
    pub pair_mean: BigRational,
    /// k = 4 only: measured `(E_c|S_1|, E_c|S_2|, E_c|S_3|)`.
    pub class_sizes: Option<(f64, f64, f64)>,
}

impl Serialize for MeasuredStarStats {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MeasuredStarStats", 5)?;
        let a: Vec<f64> = self.a.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        st.serialize_field("a", &a)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("w_star_mean", &self.w_star_mean.to_f64().unwrap_or(f64::NAN))?;
        st.serialize_field("pair_mean", &self.pair_mean.to_f64().unwrap_or(f64::NAN))?;
        st.serialize_field("class_sizes", &self.class_sizes)?;
        st.end()
    }
}

fn decimal<S: Serializer>(v: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Per-graph record of the exact count and every bound stage. Certified
/// stages are true upper bounds on the exact count; hypothetical stages are
/// computed under the counterexample hypothesis and reported as data only.
#[derive(Clone, Debug, Serialize)]
pub struct BoundChainReport {
    pub id: String,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "decimal")]
    pub exact: BigCount,
    pub stages: Vec<BoundStage>,
    #[serde(serialize_with = "decimal")]
    pub tomescu_rhs: BigCount,
    pub equality_case: bool,
    /// `(k!)^(1/k)`, the per-radiant-vertex factor used by the split stage.
    pub radiant_factor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<MeasuredStarStats>,
}

const ALL_ORDERINGS_CAP: usize = 8;

/// Runs the full bound chain on a graph with `chi(G) = k`.
pub fn bound_chain(
    g: &Graph,
    k: usize,
    pi: &PiSelection,
    guard: u64,
    id: impl Into<String>,
) -> Result<BoundChainReport> {
    let poly = chromatic_polynomial(g);
    let chi = poly.chromatic_number();
    if chi != k {
        return Err(Error::invalid(format!("chromatic number is {chi}, not the requested k = {k}")));
    }
    let n = g.n();
    let exact = poly.count(k);
    let rhs = tomescu_rhs(n, k);
    let mut stages = Vec::new();

    // stage: per-ordering overprediction bounds
    match pi {
        PiSelection::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let orderings: Vec<VertexOrdering> =
                (0..*count).map(|_| VertexOrdering::random(n, &mut rng)).collect();
            let means = mean_log_x_many(g, k, &orderings, guard)?;
            for (i, mean) in means.iter().enumerate() {
                stages.push(BoundStage {
                    name: format!("overprediction_pi_{i}"),
                    value: mean.exp(),
                    certified: true,
                });
            }
        }
        PiSelection::AllOrderings => {
            if n > ALL_ORDERINGS_CAP {
                return Err(Error::invalid(format!(
                    "all-orderings mode is limited to {ALL_ORDERINGS_CAP} vertices, got {n}"
                )));
            }
            let orderings = all_orderings(n);
            let means = mean_log_x_many(g, k, &orderings, guard)?;
            let geo = means.iter().sum::<f64>() / means.len() as f64;
            stages.push(BoundStage {
                name: "overprediction_all_orderings_geomean".to_string(),
                value: geo.exp(),
                certified: true,
            });
        }
    }

    // stage: ordering-averaged T bound
    let t_global = crate::overprediction::global_t_bound_with_guard(g, k, guard)?;
    stages.push(BoundStage { name: "t_global".to_string(), value: t_global, certified: true });

    // stages requiring the restricted neighborhoods
    let star = make_star(g, k, StarRule::LowestIndex).ok();
    let mut measured = None;
    if let Some(star) = star {
        let stats = starred_pass(g, k, &star, guard)?;
        let e_ln_tstar = stats.mean_ln_tstar;
        let k_fact: f64 = (1..=k).map(|i| i as f64).product();
        let split = k_fact * ((n - k) as f64 * e_ln_tstar).exp();
        stages.push(BoundStage {
            name: "radiant_split_t_star".to_string(),
            value: split,
            certified: true,
        });

        // hypothetical: program bound at the measured second moment
        let lp_value = if n == k {
            1.0 // the (n-k)-th power collapses; record the bare k! stage
        } else {
            let s = stats.measured.s;
            let k1 = (k - 1) as f64;
            let jmax = 12u32.max((s / k1).ceil() as u32 + 2);
            lp_support_enumeration(k as u32, k as u32, s.max(k1), jmax)?.value
        };
        stages.push(BoundStage {
            name: "lp_w_star".to_string(),
            value: k_fact * lp_value.powi((n - k) as i32),
            certified: false,
        });

        if k == 4 {
            let (s1, s2, s3) = k4_s_lp(n, n as f64);
            let value = k_fact
                * (s1 * k4_tstar(K4Class::S1).ln()
                    + s2 * k4_tstar(K4Class::S2).ln()
                    + s3 * k4_tstar(K4Class::S3).ln())
                .exp();
            stages.push(BoundStage { name: "k4_refinement".to_string(), value, certified: false });
        }
        if n > k {
            measured = Some(stats.measured);
        }
    }

    Ok(BoundChainReport {
        id: id.into(),
        n,
        k,
        equality_case: exact == rhs,
        exact,
        tomescu_rhs: rhs,
        stages,
        radiant_factor: radiant_t_bound(k),
        measured,
    })
}

/// `E_c[log X_π(c)]` for several orderings in one enumeration pass.
fn mean_log_x_many(
    g: &Graph,
    k: usize,
    orderings: &[VertexOrdering],
    guard: u64,
) -> Result<Vec<f64>> {
    let masks: Vec<Vec<u64>> = orderings.iter().map(|pi| pi.back_masks(g)).collect();
    let ln: Vec<f64> =
        (0..=k).map(|x| if x == 0 { f64::NEG_INFINITY } else { (x as f64).ln() }).collect();
    let mut sums = vec![0.0f64; orderings.len()];
    let mut count = 0u64;
    for c in enumerate_colorings_with_guard(g, k, guard)? {
        for (pi_idx, mask_set) in masks.iter().enumerate() {
            let mut s = 0.0;
            for v in g.vertices() {
                let mut seen = 0u64;
                for u in BitIter(mask_set[v]) {
                    seen |= 1 << c.color(u);
                }
                s += ln[k - (seen.count_ones() as usize).min(k)];
            }
            sums[pi_idx] += s;
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::NoColorings { k });
    }
    Ok(sums.into_iter().map(|s| s / count as f64).collect())
}

fn all_orderings(n: usize) -> Vec<VertexOrdering> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(&mut perm, n, &mut out);
    out
}

fn heap_permutations(perm: &mut Vec<usize>, k: usize, out: &mut Vec<VertexOrdering>) {
    if k <= 1 {
        out.push(VertexOrdering::from_perm(perm.clone()).expect("permutation"));
        return;
    }
    for i in 0..k {
        heap_permutations(perm, k - 1, out);
        if k.is_multiple_of(2) {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

struct StarredPass {
    mean_ln_tstar: f64,
    measured: MeasuredStarStats,
}

/// One enumeration pass collecting the star-restricted statistics over
/// non-radiant `(c, v)` pairs.
fn starred_pass(g: &Graph, k: usize, star: &crate::overprediction::StarNeighborhoods, guard: u64) -> Result<StarredPass> {
    let n = g.n();
    let mut tcache = TCache::new(k);
    let mut sum_ln_tstar = 0.0f64;
    let mut a_totals = vec![0u64; k + 1];
    let mut pair_total = 0u64;
    let mut w_num = BigRational::zero();
    let mut class_totals = [0u64; 3];
    let mut colorings = 0u64;
    for c in enumerate_colorings_with_guard(g, k, guard)? {
        colorings += 1;
        let radiant = radiant_vertices_unchecked(g, k, &c)?;
        let mut radiant_mask = 0u64;
        for v in &radiant {
            radiant_mask |= 1 << v.0;
        }
        for v in g.vertices() {
            if radiant_mask & (1 << v) != 0 {
                continue;
            }
            let profile = profile_star(&c, VertexId(v), star);
            sum_ln_tstar += tcache.get(&profile).ln();
            let mut pairs = 0u64;
            for &cnt in profile.counts() {
                let j = cnt as usize;
                a_totals[j.min(k)] += 1;
                pairs += (cnt as u64) * (cnt as u64).saturating_sub(1) / 2;
            }
            pair_total += pairs;
            w_num += crate::overprediction::w_of(&profile, k);
            if k == 4 {
                let class = k4_class_of(&profile)?;
                class_totals[class as usize] += 1;
            }
        }
    }
    if colorings == 0 {
        return Err(Error::NoColorings { k });
    }
    let nonrad_pairs = colorings * (n - k) as u64;
    let (mean_ln_tstar, measured) = if nonrad_pairs == 0 {
        let zeroes = MeasuredStarStats {
            a: vec![BigRational::zero(); k + 1],
            s: 0.0,
            w_star_mean: BigRational::zero(),
            pair_mean: BigRational::zero(),
            class_sizes: None,
        };
        (0.0, zeroes)
    } else {
        let denom = BigInt::from(nonrad_pairs);
        let a: Vec<BigRational> = a_totals
            .iter()
            .map(|&t| BigRational::new(BigInt::from(t), denom.clone()))
            .collect();
        let s = a
            .iter()
            .enumerate()
            .map(|(j, aj)| (j * j) as f64 * aj.to_f64().unwrap_or(0.0))
            .sum();
        let class_sizes = (k == 4).then(|| {
            let per = |t: u64| t as f64 / colorings as f64;
            (per(class_totals[0]), per(class_totals[1]), per(class_totals[2]))
        });
        let measured = MeasuredStarStats {
            a,
            s,
            w_star_mean: w_num / BigRational::from_integer(denom.clone()),
            pair_mean: BigRational::new(BigInt::from(pair_total), denom),
            class_sizes,
        };
        (sum_ln_tstar / nonrad_pairs as f64, measured)
    };
    Ok(StarredPass { mean_ln_tstar, measured })
}
