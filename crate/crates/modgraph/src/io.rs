//! Line-oriented text formats.
//!
//! Graph files:
//! ```text
//! g <directed|undirected> <n> <m>
//! <u> <v>            (m edge lines, 0 <= u,v < n, u != v)
//! ```
//! Witness files:
//! ```text
//! w <path|cycle> <k>
//! <v>                (k vertex lines)
//! ```
//! Lines starting with `#` and blank lines are ignored.

use crate::graph::Graph;
use crate::query::{QueryKind, Witness};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: expected `<u> <v>`, got {got:?}")]
    MalformedEdge { line: usize, got: String },
    #[error("line {line}: endpoint {vertex} out of range (vertex count {count})")]
    EndpointOutOfRange { line: usize, vertex: u32, count: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("expected {expected} edge lines, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("line {line}: malformed witness entry: {detail}")]
    MalformedWitness { line: usize, detail: String },
    #[error("input is empty")]
    Empty,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the edge-list format. Every diagnostic carries its line number.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::Empty)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = |detail: &str| ParseError::MalformedHeader {
        line: header_line,
        detail: detail.to_string(),
    };
    if fields.len() != 4 || fields[0] != "g" {
        return Err(bad_header("expected `g <directed|undirected> <n> <m>`"));
    }
    let directed = match fields[1] {
        "directed" => true,
        "undirected" => false,
        other => return Err(bad_header(&format!("unknown orientation {other:?}"))),
    };
    let n: usize = fields[2]
        .parse()
        .map_err(|_| bad_header("vertex count is not a number"))?;
    let m: usize = fields[3]
        .parse()
        .map_err(|_| bad_header("edge count is not a number"))?;

    let mut g = Graph::new(directed, n);
    let mut found = 0usize;
    for (line, text) in lines {
        let parts: Vec<&str> = text.split_whitespace().collect();
        let endpoints: Option<(u32, u32)> = match parts.as_slice() {
            [a, b] => a.parse().ok().zip(b.parse().ok()),
            _ => None,
        };
        let (u, v) = endpoints.ok_or_else(|| ParseError::MalformedEdge {
            line,
            got: text.to_string(),
        })?;
        found += 1;
        if found > m {
            return Err(ParseError::WrongEdgeCount {
                expected: m,
                found,
            });
        }
        g.add_edge(u, v).map_err(|e| match e {
            crate::graph::GraphError::VertexOutOfRange(vertex, count) => {
                ParseError::EndpointOutOfRange { line, vertex, count }
            }
            crate::graph::GraphError::SelfLoop(vertex) => ParseError::SelfLoop { line, vertex },
            crate::graph::GraphError::DuplicateEdge(u, v) => {
                ParseError::DuplicateEdge { line, u, v }
            }
        })?;
    }
    if found != m {
        return Err(ParseError::WrongEdgeCount {
            expected: m,
            found,
        });
    }
    Ok(g)
}

/// Canonical text form: header plus edges in lexicographic order.
/// `parse_graph(emit_graph(g)) == g` for every graph.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    let orientation = if g.is_directed() { "directed" } else { "undirected" };
    writeln!(out, "g {} {} {}", orientation, g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_witness(text: &str) -> Result<Witness, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::Empty)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad = |line: usize, detail: &str| ParseError::MalformedWitness {
        line,
        detail: detail.to_string(),
    };
    if fields.len() != 3 || fields[0] != "w" {
        return Err(bad(header_line, "expected `w <path|cycle> <k>`"));
    }
    let kind = match fields[1] {
        "path" => QueryKind::Path,
        "cycle" => QueryKind::Cycle,
        other => return Err(bad(header_line, &format!("unknown kind {other:?}"))),
    };
    let k: usize = fields[2]
        .parse()
        .map_err(|_| bad(header_line, "vertex count is not a number"))?;
    let mut vertices = Vec::with_capacity(k);
    for (line, text) in lines {
        let v: u32 = text
            .parse()
            .map_err(|_| bad(line, "expected a single vertex index"))?;
        vertices.push(v);
    }
    if vertices.len() != k {
        return Err(bad(
            header_line,
            &format!("expected {k} vertex lines, found {}", vertices.len()),
        ));
    }
    Ok(Witness { kind, vertices })
}

pub fn emit_witness(w: &Witness) -> String {
    let mut out = String::new();
    writeln!(out, "w {} {}", w.kind, w.vertices.len()).unwrap();
    for v in &w.vertices {
        writeln!(out, "{v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k3() {
        let g = parse_graph("g undirected 3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(!g.is_directed());
    }

    #[test]
    fn parses_directed_two_cycle_and_round_trips() {
        let text = "g directed 2 2\n0 1\n1 0\n";
        let g = parse_graph(text).unwrap();
        assert!(g.is_directed());
        assert_eq!(emit_graph(&g), text);
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let err = parse_graph("g undirected 2 1\n0 0\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, vertex: 0 });
    }

    #[test]
    fn rejects_duplicate_undirected_edge() {
        let err = parse_graph("g undirected 2 2\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 3, u: 1, v: 0 });
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = parse_graph("g undirected 2 1\n0 5\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::EndpointOutOfRange { line: 2, vertex: 5, count: 2 }
        );
    }

    #[test]
    fn empty_graph_round_trips() {
        let text = "g undirected 0 0\n";
        assert_eq!(emit_graph(&parse_graph(text).unwrap()), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = parse_graph("# a triangle\n\ng undirected 3 3\n0 1\n# middle\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn witness_round_trip() {
        let w = Witness::path(vec![0, 1, 2]);
        assert_eq!(parse_witness(&emit_witness(&w)).unwrap(), w);
    }
}
