//! Corpus-wide invariants on the exhaustive small-graph tables: counts
//! against brute force, estimator unbiasedness, and criticality structure.

use num_traits::ToPrimitive;

use chroma_core::chromatic::{chromatic_number, count_colorings};
use chroma_core::criticality::{brooks_check, is_k_critical};
use chroma_core::graph::Graph;
use chroma_core::overprediction::{sis_estimate, PiMode, VertexOrdering};
use chroma_core::smallgraphs::connected_graphs_up_to;

/// Independent oracle: count proper colorings over all k^n assignments.
fn brute_force_count(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    if k == 0 {
        return u64::from(n == 0);
    }
    let edges = g.edges();
    let mut count = 0u64;
    let mut assignment = vec![0usize; n];
    'outer: loop {
        if edges.iter().all(|&(u, v)| assignment[u] != assignment[v]) {
            count += 1;
        }
        for slot in assignment.iter_mut() {
            *slot += 1;
            if *slot < k {
                continue 'outer;
            }
            *slot = 0;
        }
        return count;
    }
}

#[test]
fn exact_counts_match_brute_force_on_small_corpus() {
    for g in connected_graphs_up_to(6) {
        for k in 0..=4 {
            assert_eq!(
                count_colorings(&g, k).to_u64().unwrap(),
                brute_force_count(&g, k),
                "mismatch on {g:?} at k = {k}"
            );
        }
    }
}

#[test]
fn estimator_is_unbiased_on_every_small_graph() {
    // fixed ordering, fixed seed: the mean of 10^5 greedy-run weights must
    // land within four standard errors of the exact count (exactly on it
    // when the weight is deterministic)
    for (idx, g) in connected_graphs_up_to(6).into_iter().enumerate() {
        let k = chromatic_number(&g);
        let exact = count_colorings(&g, k).to_f64().unwrap();
        let est = sis_estimate(
            &g,
            k,
            100_000,
            &PiMode::Fixed(VertexOrdering::identity(g.n())),
            1000 + idx as u64,
        );
        if est.stderr == 0.0 {
            assert_eq!(est.mean, exact, "deterministic weight must be exact on {g:?}");
        } else {
            assert!(
                (est.mean - exact).abs() <= 4.0 * est.stderr,
                "estimate {} +- {} misses exact {exact} on {g:?}",
                est.mean,
                est.stderr
            );
        }
    }
}

#[test]
fn critical_graphs_have_degree_structure() {
    // every k-critical graph: minimum degree at least k-1, and (k >= 4)
    // either the clique or some vertex of degree at least k
    let mut critical_seen = 0usize;
    for g in connected_graphs_up_to(7) {
        let k = chromatic_number(&g);
        let report = is_k_critical(&g, k);
        if !report.is_critical {
            continue;
        }
        critical_seen += 1;
        assert!(
            report.min_degree >= k - 1,
            "critical graph {g:?} has min degree {} < {}",
            report.min_degree,
            k - 1
        );
        if k >= 4 {
            assert!(brooks_check(&g, k).unwrap(), "degree condition fails on {g:?}");
        }
        if let Some(ok) = report.gallai_ok {
            assert!(ok, "edge floor fails on {g:?}");
        }
    }
    assert!(critical_seen >= 10, "only {critical_seen} critical graphs found");
}
