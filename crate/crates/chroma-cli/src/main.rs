//! `chroma` — exact coloring counts, sampling estimates, bound chains, and
//! corpus verification against the `k!(k-1)^(n-k)` ceiling.
//!
//! Output is JSON (one object per result line). Exit codes: 0 all checks
//! pass, 1 a mathematical assertion failed, 2 input error.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use chroma_core::bounds::{
    bound_chain, k4_beats_trivial, lp_brute_force, lp_closed_form, sweep_edge_count,
    sweep_theorem9, LpInstance, PiSelection,
};
use chroma_core::chromatic::{chromatic_number, chromatic_polynomial};
use chroma_core::criticality::{
    balanced_clique_with_trees, is_k_critical, moser_spindle, mycielskian_triangle,
};
use chroma_core::graph::Graph;
use chroma_core::graph6::parse_graph6;
use chroma_core::overprediction::{sis_estimate, PiMode, VertexOrdering};
use chroma_core::verify::{verify_general, verify_tomescu, VerificationRecord};
use chroma_core::DEFAULT_ENUMERATION_GUARD;

#[derive(Parser)]
#[command(name = "chroma", version, about = "Graph coloring-count toolkit")]
struct Cli {
    /// Worker threads for corpus commands (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Size guard for exact computations: graphs with more vertices are
    /// refused (single-graph commands) or skipped with a warning (corpora).
    #[arg(long, global = true, default_value_t = 16)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

/// How to obtain the input graph; exactly one source must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Builtin graph: complete:K, cycle:N, path:N, moser, mycielski3,
    /// clique-with-trees:K:N.
    #[arg(long)]
    builtin: Option<String>,

    /// A single graph6 line.
    #[arg(long)]
    g6: Option<String>,

    /// Edge-list file: header "n m", then one "u v" line per edge.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact number of proper k-colorings.
    Count {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
    },
    /// Exact chromatic polynomial (coefficients ascending by degree).
    Poly {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Chromatic number.
    Chi {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Sequential-importance-sampling estimate of the coloring count.
    Estimate {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Ordering policy: "fixed" (identity) or "random" (fresh per sample).
        #[arg(long, default_value = "fixed")]
        pi: String,
        #[arg(long, env = "CHROMA_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Full bound-chain report for one graph.
    Bound {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
        /// Number of sampled orderings for the per-ordering stage.
        #[arg(long, default_value_t = 3)]
        orderings: usize,
        /// Use every ordering of the vertices (n <= 8).
        #[arg(long)]
        all_orderings: bool,
        #[arg(long, env = "CHROMA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_GUARD)]
        guard: u64,
    },
    /// k-criticality report.
    Critical {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(short)]
        k: usize,
    },
    /// Verify a graph6 corpus against k!(k-1)^(n-k) (and optionally the
    /// general-x ceiling). JSON-lines output, one record per graph.
    VerifyTomescu {
        /// Corpus file, one graph6 line per graph.
        corpus: PathBuf,
        /// Only verify graphs with this chromatic number (diagnostic mode,
        /// without assertions, when below 4).
        #[arg(short)]
        k: Option<usize>,
        /// Also check x-color counts for x in LO:HI against (x)_k (x-1)^(n-k).
        #[arg(long, value_parser = parse_range)]
        general_x: Option<(usize, usize)>,
    },
    /// Run the closed-form inequality sweeps; nonzero exit on any failure.
    LemmaSweep {
        #[arg(long, default_value_t = 100)]
        kmax: usize,
    },
    /// Bound-chain reports for every graph of a corpus with chi = k.
    BoundChain {
        corpus: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        orderings: usize,
        #[arg(long, env = "CHROMA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_GUARD)]
        guard: u64,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once(':').ok_or("range must be LO:HI")?;
    let lo: usize = lo.parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: usize = hi.parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    /// Exit code 2: bad input.
    Input(String),
    /// Exit code 1: a mathematical check failed.
    Math(String),
}

impl From<chroma_core::Error> for Failure {
    fn from(e: chroma_core::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore failure: the pool may already exist in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli.command, cli.max_n) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("chroma: check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("chroma: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, max_n: usize) -> Result<(), Failure> {
    match command {
        Command::Count { graph, k } => {
            let (g, _) = load_graph(&graph)?;
            check_size(&g, max_n)?;
            let count = chroma_core::chromatic::count_colorings(&g, k);
            println!("{}", serde_json::json!({ "count": count.to_string() }));
            Ok(())
        }
        Command::Poly { graph } => {
            let (g, _) = load_graph(&graph)?;
            check_size(&g, max_n)?;
            let poly = chromatic_polynomial(&g);
            let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
            println!("{}", serde_json::json!({ "n": g.n(), "coeffs": coeffs }));
            Ok(())
        }
        Command::Chi { graph } => {
            let (g, _) = load_graph(&graph)?;
            check_size(&g, max_n)?;
            println!("{}", serde_json::json!({ "chi": chromatic_number(&g) }));
            Ok(())
        }
        Command::Estimate { graph, k, samples, pi, seed } => {
            let (g, _) = load_graph(&graph)?;
            let mode = match pi.as_str() {
                "fixed" => PiMode::Fixed(VertexOrdering::identity(g.n())),
                "random" => PiMode::FreshPerSample,
                other => return Err(Failure::Input(format!("unknown pi mode '{other}'"))),
            };
            if samples == 0 {
                return Err(Failure::Input("need at least one sample".to_string()));
            }
            let est = sis_estimate(&g, k, samples, &mode, seed);
            println!("{}", serde_json::to_string(&est).expect("estimate serializes"));
            Ok(())
        }
        Command::Bound { graph, k, orderings, all_orderings, seed, guard } => {
            let (g, id) = load_graph(&graph)?;
            check_size(&g, max_n)?;
            let selection = if all_orderings {
                PiSelection::AllOrderings
            } else {
                PiSelection::Sampled { count: orderings, seed }
            };
            let report = bound_chain(&g, k, &selection, guard, id)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(())
        }
        Command::Critical { graph, k } => {
            let (g, _) = load_graph(&graph)?;
            check_size(&g, max_n)?;
            let report = is_k_critical(&g, k);
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(())
        }
        Command::VerifyTomescu { corpus, k, general_x } => {
            cmd_verify_tomescu(&corpus, k, general_x, max_n)
        }
        Command::LemmaSweep { kmax } => cmd_lemma_sweep(kmax),
        Command::BoundChain { corpus, k, orderings, seed, guard } => {
            cmd_bound_chain(&corpus, k, orderings, seed, guard, max_n)
        }
    }
}

fn check_size(g: &Graph, max_n: usize) -> Result<(), Failure> {
    if g.n() > max_n {
        return Err(Failure::Input(format!(
            "graph has {} vertices; exact computation is guarded at {max_n} (raise with --max-n)",
            g.n()
        )));
    }
    Ok(())
}

fn load_graph(input: &GraphInput) -> Result<(Graph, String), Failure> {
    if let Some(name) = &input.builtin {
        return Ok((builtin(name)?, name.clone()));
    }
    if let Some(line) = &input.g6 {
        return Ok((parse_graph6(line)?, line.clone()));
    }
    if let Some(path) = &input.edges {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok((chroma_core::edgelist::parse_edge_list(&text)?, path.display().to_string()));
    }
    unreachable!("clap enforces exactly one graph source")
}

fn builtin(name: &str) -> Result<Graph, Failure> {
    let parts: Vec<&str> = name.split(':').collect();
    let arg = |i: usize| -> Result<usize, Failure> {
        parts
            .get(i)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Failure::Input(format!("builtin '{name}' needs a numeric argument")))
    };
    let g = match parts[0] {
        "complete" => Graph::complete(arg(1)?)?,
        "cycle" => Graph::cycle(arg(1)?)?,
        "path" => Graph::path(arg(1)?)?,
        "moser" => moser_spindle(),
        "mycielski3" => mycielskian_triangle(),
        "clique-with-trees" => balanced_clique_with_trees(arg(1)?, arg(2)?)?,
        other => {
            return Err(Failure::Input(format!(
                "unknown builtin '{other}'; available: complete:K cycle:N path:N moser mycielski3 clique-with-trees:K:N"
            )))
        }
    };
    Ok(g)
}

/// Per-line outcome of a corpus pass, printed strictly in input order.
struct LineOutcome {
    records: Vec<String>,
    warning: Option<String>,
    parse_error: Option<String>,
    violation: bool,
}

const CHUNK: usize = 512;

fn cmd_verify_tomescu(
    corpus: &PathBuf,
    k_filter: Option<usize>,
    general_x: Option<(usize, usize)>,
    max_n: usize,
) -> Result<(), Failure> {
    let mut graphs = 0u64;
    let mut violations = 0u64;
    let mut parse_errors = 0u64;
    process_corpus(corpus, |lineno, line| verify_line(lineno, line, k_filter, general_x, max_n), |out| {
        graphs += u64::from(out.parse_error.is_none() && out.warning.is_none());
        violations += u64::from(out.violation);
        parse_errors += u64::from(out.parse_error.is_some());
    })?;
    eprintln!("verify-tomescu: {graphs} graphs verified, {violations} violations, {parse_errors} parse errors");
    if violations > 0 {
        return Err(Failure::Math(format!("{violations} ceiling or equality-characterization violations")));
    }
    if parse_errors > 0 {
        return Err(Failure::Input(format!("{parse_errors} unparsable corpus lines")));
    }
    Ok(())
}

fn verify_line(
    lineno: usize,
    line: &str,
    k_filter: Option<usize>,
    general_x: Option<(usize, usize)>,
    max_n: usize,
) -> LineOutcome {
    let mut out =
        LineOutcome { records: Vec::new(), warning: None, parse_error: None, violation: false };
    let g = match parse_graph6(line) {
        Ok(g) => g,
        Err(e) => {
            out.parse_error = Some(format!("line {lineno}: {e}"));
            return out;
        }
    };
    if !g.is_connected() {
        out.warning = Some(format!("line {lineno}: skipping disconnected graph {line}"));
        return out;
    }
    if g.n() > max_n {
        out.warning =
            Some(format!("line {lineno}: skipping {line}: {} vertices exceed --max-n {max_n}", g.n()));
        return out;
    }
    let chi = chromatic_number(&g);
    let wanted = match k_filter {
        Some(k) => chi == k,
        None => chi >= 4,
    };
    if !wanted {
        return out;
    }
    // assertions apply from chromatic number 4 upward; below is diagnostics
    let assert_mode = chi >= 4;
    let push = |rec: &VerificationRecord, out: &mut LineOutcome| {
        if assert_mode && !rec.theorem_holds() {
            out.violation = true;
        }
        out.records.push(serde_json::to_string(rec).expect("record serializes"));
    };
    match general_x {
        None => match verify_tomescu(&g, line) {
            Ok(rec) => push(&rec, &mut out),
            Err(e) => out.parse_error = Some(format!("line {lineno}: {e}")),
        },
        Some((lo, hi)) => {
            for x in lo.max(chi)..=hi {
                match verify_general(&g, line, x) {
                    Ok(rec) => push(&rec, &mut out),
                    Err(e) => {
                        out.parse_error = Some(format!("line {lineno}: {e}"));
                        break;
                    }
                }
            }
        }
    }
    out
}

fn cmd_bound_chain(
    corpus: &PathBuf,
    k: usize,
    orderings: usize,
    seed: u64,
    guard: u64,
    max_n: usize,
) -> Result<(), Failure> {
    let mut parse_errors = 0u64;
    process_corpus(
        corpus,
        |lineno, line| {
            let mut out = LineOutcome {
                records: Vec::new(),
                warning: None,
                parse_error: None,
                violation: false,
            };
            let g = match parse_graph6(line) {
                Ok(g) => g,
                Err(e) => {
                    out.parse_error = Some(format!("line {lineno}: {e}"));
                    return out;
                }
            };
            if g.n() > max_n {
                out.warning = Some(format!(
                    "line {lineno}: skipped: {} vertices exceed --max-n {max_n}",
                    g.n()
                ));
                return out;
            }
            match bound_chain(&g, k, &PiSelection::Sampled { count: orderings, seed }, guard, line)
            {
                Ok(report) => {
                    out.records.push(serde_json::to_string(&report).expect("report serializes"))
                }
                Err(e) => out.warning = Some(format!("line {lineno}: skipped: {e}")),
            }
            out
        },
        |out| {
            parse_errors += u64::from(out.parse_error.is_some());
        },
    )?;
    if parse_errors > 0 {
        return Err(Failure::Input(format!("{parse_errors} unparsable corpus lines")));
    }
    Ok(())
}

/// Streams a corpus in fixed-size chunks: lines are processed in parallel
/// inside a chunk, but output follows the input order byte for byte.
fn process_corpus(
    corpus: &PathBuf,
    work: impl Fn(usize, &str) -> LineOutcome + Sync,
    mut tally: impl FnMut(&LineOutcome),
) -> Result<(), Failure> {
    let file = fs::File::open(corpus)
        .map_err(|e| Failure::Input(format!("{}: {e}", corpus.display())))?;
    let reader = BufReader::new(file);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut lines = reader.lines().enumerate();
    loop {
        let mut batch = Vec::with_capacity(CHUNK);
        for (idx, line) in lines.by_ref().take(CHUNK) {
            let line =
                line.map_err(|e| Failure::Input(format!("{}: {e}", corpus.display())))?;
            if !line.trim().is_empty() {
                batch.push((idx + 1, line));
            }
        }
        if batch.is_empty() {
            break;
        }
        let outcomes: Vec<LineOutcome> =
            batch.par_iter().map(|(lineno, line)| work(*lineno, line.trim())).collect();
        let mut out = stdout.lock();
        let mut err = stderr.lock();
        for outcome in &outcomes {
            for record in &outcome.records {
                writeln!(out, "{record}").map_err(|e| Failure::Input(e.to_string()))?;
            }
            if let Some(w) = &outcome.warning {
                writeln!(err, "chroma: {w}").map_err(|e| Failure::Input(e.to_string()))?;
            }
            if let Some(p) = &outcome.parse_error {
                writeln!(err, "chroma: {p}").map_err(|e| Failure::Input(e.to_string()))?;
            }
            tally(outcome);
        }
    }
    Ok(())
}

fn cmd_lemma_sweep(kmax: usize) -> Result<(), Failure> {
    if kmax < 5 {
        return Err(Failure::Input(format!("kmax must be at least 5, got {kmax}")));
    }
    let mut all_pass = true;

    let t9 = sweep_theorem9(kmax);
    println!(
        "{}",
        serde_json::json!({
            "sweep": "theorem9", "kmax": kmax, "pass": t9.pass,
            "violations": t9.violations, "k4_violations": t9.k4_violations,
        })
    );
    all_pass &= t9.pass;

    let ec = sweep_edge_count(kmax);
    println!(
        "{}",
        serde_json::json!({
            "sweep": "edge_count", "kmax": kmax, "pass": ec.pass, "violations": ec.violations,
        })
    );
    all_pass &= ec.pass;

    // refined k = 4 ceiling beats the trivial one exactly from n = 8 on
    let k4_pass = (8..=1000).all(k4_beats_trivial) && !k4_beats_trivial(7);
    println!(
        "{}",
        serde_json::json!({ "sweep": "k4_final_comparison", "pass": k4_pass, "boundary": 8 })
    );
    all_pass &= k4_pass;

    // closed form versus support enumeration on a fine grid
    let mut lp_pass = true;
    'grid: for k in 4..=10u32 {
        for x in [k, k + 3] {
            let k1 = (k - 1) as f64;
            for i in 0..200 {
                let s = ((199 - i) as f64 * k1 + i as f64 * 3.0 * k1) / 199.0;
                let inst = LpInstance::new(x, k, s).expect("grid point in range");
                let brute = match lp_brute_force(&inst, 12) {
                    Ok(sol) => sol,
                    Err(_) => {
                        lp_pass = false;
                        break 'grid;
                    }
                };
                if (lp_closed_form(&inst) - brute.value).abs() > 1e-12 {
                    lp_pass = false;
                    break 'grid;
                }
            }
        }
    }
    println!("{}", serde_json::json!({ "sweep": "lp_grid", "pass": lp_pass }));
    all_pass &= lp_pass;

    if all_pass {
        Ok(())
    } else {
        Err(Failure::Math("a lemma sweep reported violations".to_string()))
    }
}
