use std::fmt::Write as _;

use spnmap_core::reductions::Graph;

use super::{content_lines, no_trailing, number, ParseError};

/// Reads `graph <n>` followed by `edge <u> <v>` lines, vertices numbered
/// from 1. `#` starts a comment. Duplicate edges are dropped with a warning.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text, '#');
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty document; expected `graph <n>`"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("graph") {
        return Err(ParseError::new(header_line, "expected `graph <n>` header"));
    }
    let n: usize = number(tokens.next(), "vertex count", header_line)?;
    no_trailing(tokens, header_line)?;

    let mut g = Graph::new(n);
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        if tokens.next() != Some("edge") {
            return Err(ParseError::new(line, "expected `edge <u> <v>`"));
        }
        let u: usize = number(tokens.next(), "vertex", line)?;
        let v: usize = number(tokens.next(), "vertex", line)?;
        no_trailing(tokens, line)?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(ParseError::new(line, format!("vertex out of range 1..={n}")));
        }
        if u == v {
            return Err(ParseError::new(line, format!("self-loop on vertex {u}")));
        }
        let added = g.add_edge(u - 1, v - 1).map_err(|e| ParseError::new(line, e.to_string()))?;
        if !added {
            log::warn!("line {line}: duplicate edge {u}-{v} ignored");
        }
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.num_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {} {}", u + 1, v + 1);
    }
    out
}
