//! Exact coloring counts and entropy-style upper bounds for small graphs.
//!
//! The crate is organized around a handful of pieces:
//!
//! * [`graph`] — immutable bitset graphs with the structural reductions
//!   (2-core, contraction, deletions) everything else is built on;
//! * [`graph6`] / [`edgelist`] — corpus ingestion formats;
//! * [`chromatic`] — exact chromatic polynomials via deletion–contraction,
//!   exact counts, and full coloring enumeration;
//! * [`overprediction`] — the greedy-prediction machinery: per-vertex choice
//!   counts `X_π`, their permutation geometric means `T`, the harmonic bound
//!   `W`, and a sequential-importance-sampling estimator of the count;
//! * [`criticality`] — k-critical checks, radiant vertices, collision
//!   probabilities, and the named 7-vertex constructions;
//! * [`bounds`] — the closed-form linear program, the inequality sweeps, the
//!   k = 4 refinement table, and the per-graph bound chain report;
//! * [`verify`] — per-graph verification records against the
//!   `k!(k-1)^(n-k)` ceiling and its equality characterization;
//! * [`smallgraphs`] — exhaustive non-isomorphic connected graph corpora for
//!   n up to 9, used by the verification harnesses.

pub mod bounds;
pub mod chromatic;
pub mod criticality;
pub mod edgelist;
mod error;
pub mod graph;
pub mod graph6;
pub mod overprediction;
pub mod smallgraphs;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId, MAX_VERTICES};

/// Arbitrary-precision nonnegative count (coloring counts, weights).
pub type BigCount = num_bigint::BigUint;

/// Exact rational used for probabilities and harmonic sums.
pub type BigRatio = num_rational::BigRational;

/// Default ceiling on exact coloring enumeration (number of colorings).
pub const DEFAULT_ENUMERATION_GUARD: u64 = 10_000_000;

/// Relative tolerance for comparisons done in exp/log space.
pub const LOG_SPACE_RTOL: f64 = 1e-9;

/// Tolerance for closed-form floating identities.
pub const CLOSED_FORM_TOL: f64 = 1e-12;
