//! graph6 encoding for graphs on at most 62 vertices.
//!
//! One printable ASCII line per graph: a header byte `n + 63`, then the
//! upper-triangle adjacency bits `x(0,1) x(0,2) x(1,2) x(0,3) ...` packed
//! big-endian into 6-bit chunks, each chunk offset by 63. The final chunk is
//! zero-padded.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_G6_VERTICES: usize = 62;

fn bad(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Decodes a single graph6 line (no trailing newline).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(bad(0, "empty line"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(bad(i, format!("byte {b} outside printable graph6 range 63..=126")));
        }
    }
    let header = bytes[0];
    if header == 126 {
        return Err(bad(0, "multi-byte vertex counts (n > 62) are not supported"));
    }
    let n = (header - OFFSET) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < 1 + nbytes {
        return Err(bad(bytes.len(), format!("truncated: need {nbytes} data bytes for n = {n}")));
    }
    if bytes.len() > 1 + nbytes {
        return Err(bad(1 + nbytes, "trailing garbage after adjacency bits"));
    }

    let mut edges = Vec::new();
    let mut idx = 0usize; // bit index into the upper triangle, column-major
    for (byte_no, &b) in bytes[1..].iter().enumerate() {
        let chunk = b - OFFSET;
        for shift in (0..6).rev() {
            let set = chunk & (1 << shift) != 0;
            if idx >= nbits {
                if set {
                    return Err(bad(1 + byte_no, "nonzero padding bits"));
                }
            } else if set {
                let (u, v) = triangle_coords(idx);
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Inverse of [`triangle_index`]: bit position -> `(row, col)` with row < col.
fn triangle_coords(idx: usize) -> (usize, usize) {
    // column j contains j bits, at offsets j(j-1)/2 .. j(j-1)/2 + j - 1
    let mut col = 1usize;
    let mut base = 0usize;
    while base + col <= idx {
        base += col;
        col += 1;
    }
    (idx - base, col)
}

/// Encodes a graph as a graph6 line; requires `n <= 62`.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_G6_VERTICES {
        return Err(Error::invalid(format!(
            "graph6 output is limited to {MAX_G6_VERTICES} vertices, got {n}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let mut out = Vec::with_capacity(1 + nbytes);
    out.push(n as u8 + OFFSET);
    let mut chunk = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            chunk <<= 1;
            if g.has_edge(row, col) {
                chunk |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(chunk + OFFSET);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        chunk <<= 6 - filled;
        out.push(chunk + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(encode_graph6(&g).unwrap(), "@");
    }

    #[test]
    fn star_line_round_trips() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        // center 4 adjacent to everything
        assert_eq!(g.degree(4), 4);
        assert_eq!(encode_graph6(&g).unwrap(), "D?{");
    }

    #[test]
    fn known_corpus_line() {
        // "DQc" is the standard encoding of the 5-path 2-0-4-3-1.
        let g = parse_graph6("DQc").unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
    }

    #[test]
    fn k4_round_trip() {
        let k4 = Graph::complete(4).unwrap();
        let line = encode_graph6(&k4).unwrap();
        assert_eq!(line, "C~");
        let back = parse_graph6(&line).unwrap();
        assert_eq!(back, k4);
    }

    #[test]
    fn bad_byte_reports_offset() {
        let err = parse_graph6("D \u{7f}").unwrap_err();
        match err {
            Error::Graph6 { offset, .. } => assert_eq!(offset, 1),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn truncated_and_trailing() {
        assert!(matches!(parse_graph6("D?"), Err(Error::Graph6 { .. })));
        let err = parse_graph6("D?{?").unwrap_err();
        match err {
            Error::Graph6 { offset, reason } => {
                assert_eq!(offset, 3);
                assert!(reason.contains("trailing"));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn nonzero_padding_rejected() {
        // n=2: 1 bit used, 5 padding bits must be zero. '~' = all ones.
        let err = parse_graph6("A~").unwrap_err();
        assert!(err.to_string().contains("padding"));
    }

    #[test]
    fn empty_graph_on_zero_vertices() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.n(), 0);
    }
}
