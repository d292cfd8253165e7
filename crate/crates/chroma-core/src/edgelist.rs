//! Plain-text edge lists: a header line `n m` followed by `m` lines `u v`.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn bad(line: usize, reason: impl Into<String>) -> Error {
    Error::EdgeList { line, reason: reason.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines.next().ok_or_else(|| bad(1, "missing 'n m' header"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(lineno, "header must be 'n m'"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(lineno, "header must be 'n m'"))?;
    if it.next().is_some() {
        return Err(bad(lineno, "header must be exactly 'n m'"));
    }

    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(lineno, "edge line must be 'u v'"))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(lineno, "edge line must be 'u v'"))?;
        if it.next().is_some() {
            return Err(bad(lineno, "edge line must be exactly 'u v'"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(bad(1, format!("header promised {m} edges, found {}", edges.len())));
    }
    Graph::from_edge_list(n, &edges)
}
