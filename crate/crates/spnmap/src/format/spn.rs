use std::fmt::Write as _;

use spnmap_core::{Network, Node, NodeId, RawNetwork};

use super::{content_lines, no_trailing, number, ParseError};

enum Declared {
    Leaf { var: usize, probs: Vec<f64> },
    Sum,
    Product,
}

/// Parses an SPN document.
///
/// ```text
/// spn <count>
/// node <id> sum | node <id> prod | node <id> leaf <var> <p0> <p1> ...
/// edge <parent> <child> [weight]     # weight iff the parent is a sum
/// root <id>                          # optional, defaults to 0
/// ```
///
/// An edge must come after its parent's `node` line; children keep the order
/// of their edges. Only the syntax is checked here: the result may still be
/// an invalid network (see [`spnmap_core::validate`]).
pub fn parse_spn(text: &str) -> Result<RawNetwork, ParseError> {
    let mut lines = content_lines(text, '#');
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty document; expected `spn <count>`"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("spn") {
        return Err(ParseError::new(header_line, "expected `spn <count>` header"));
    }
    let count: usize = number(tokens.next(), "node count", header_line)?;
    no_trailing(tokens, header_line)?;

    let mut declared: Vec<Option<Declared>> = (0..count).map(|_| None).collect();
    let mut edges: Vec<Vec<(NodeId, Option<f64>)>> = vec![Vec::new(); count];
    let mut root: Option<NodeId> = None;

    let id_in_range = |id: usize, line: usize| {
        if id < count {
            Ok(id)
        } else {
            Err(ParseError::new(line, format!("node id {id} out of range for {count} nodes")))
        }
    };

    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("node") => {
                let id = id_in_range(number(tokens.next(), "node id", line)?, line)?;
                let node = match tokens.next() {
                    Some("sum") => Declared::Sum,
                    Some("prod") => Declared::Product,
                    Some("leaf") => {
                        let var = number(tokens.next(), "leaf variable", line)?;
                        let probs = tokens
                            .by_ref()
                            .map(|t| number::<f64>(Some(t), "probability", line))
                            .collect::<Result<Vec<_>, _>>()?;
                        if probs.is_empty() {
                            return Err(ParseError::new(line, "leaf without probabilities"));
                        }
                        Declared::Leaf { var, probs }
                    }
                    Some(other) => {
                        return Err(ParseError::new(line, format!("unknown node kind {other:?}")));
                    }
                    None => return Err(ParseError::new(line, "missing node kind")),
                };
                no_trailing(tokens, line)?;
                if declared[id].replace(node).is_some() {
                    return Err(ParseError::new(line, format!("node {id} declared twice")));
                }
            }
            Some("edge") => {
                let parent = id_in_range(number(tokens.next(), "parent id", line)?, line)?;
                let child = id_in_range(number(tokens.next(), "child id", line)?, line)?;
                let weight = match declared[parent] {
                    None => {
                        return Err(ParseError::new(line, format!("edge from undeclared node {parent}")));
                    }
                    Some(Declared::Leaf { .. }) => {
                        return Err(ParseError::new(line, format!("edge from leaf {parent}")));
                    }
                    Some(Declared::Sum) => {
                        let w = tokens.next().ok_or_else(|| {
                            ParseError::new(line, format!("edge under sum node {parent} needs a weight"))
                        })?;
                        Some(number::<f64>(Some(w), "weight", line)?)
                    }
                    Some(Declared::Product) => None,
                };
                no_trailing(tokens, line)?;
                edges[parent].push((child, weight));
            }
            Some("root") => {
                let id = id_in_range(number(tokens.next(), "root id", line)?, line)?;
                no_trailing(tokens, line)?;
                if root.replace(id).is_some() {
                    return Err(ParseError::new(line, "root given twice"));
                }
            }
            Some("spn") => return Err(ParseError::new(line, "repeated `spn` header")),
            Some(other) => return Err(ParseError::new(line, format!("unknown directive {other:?}"))),
            None => unreachable!("content lines are non-empty"),
        }
    }

    let mut nodes = Vec::with_capacity(count);
    for (id, (node, edges)) in declared.into_iter().zip(edges).enumerate() {
        let node = match node {
            None => return Err(ParseError::new(header_line, format!("node {id} is never declared"))),
            Some(Declared::Leaf { var, probs }) => Node::Leaf { var, probs },
            Some(Declared::Sum) => {
                let (children, weights) = edges.into_iter().map(|(c, w)| (c, w.unwrap_or(0.0))).unzip();
                Node::Sum { children, weights }
            }
            Some(Declared::Product) => Node::Product {
                children: edges.into_iter().map(|(c, _)| c).collect(),
            },
        };
        nodes.push(node);
    }
    Ok(RawNetwork::new(nodes, root.unwrap_or(0)))
}

/// Writes `network` in the format read by [`parse_spn`]: nodes in id order,
/// then edges grouped by parent, then the root. Numbers use the shortest
/// decimal that reads back to the same `f64` (at most 17 significant digits).
pub fn serialize_spn(network: &Network) -> String {
    write_nodes(network.nodes(), network.root())
}

/// [`serialize_spn`] for a network that has not been validated.
pub fn serialize_raw(raw: &RawNetwork) -> String {
    write_nodes(&raw.nodes, raw.root)
}

fn write_nodes(nodes: &[Node], root: NodeId) -> String {
    let mut out = String::new();
    // Writing into a String cannot fail.
    let _ = writeln!(out, "spn {}", nodes.len());
    for (id, node) in nodes.iter().enumerate() {
        match node {
            Node::Leaf { var, probs } => {
                let _ = write!(out, "node {id} leaf {var}");
                for p in probs {
                    let _ = write!(out, " {p:?}");
                }
                out.push('\n');
            }
            Node::Sum { .. } => {
                let _ = writeln!(out, "node {id} sum");
            }
            Node::Product { .. } => {
                let _ = writeln!(out, "node {id} prod");
            }
        }
    }
    for (id, node) in nodes.iter().enumerate() {
        match node {
            Node::Sum { children, weights } => {
                for (c, w) in children.iter().zip(weights) {
                    let _ = writeln!(out, "edge {id} {c} {w:?}");
                }
            }
            Node::Product { children } => {
                for c in children {
                    let _ = writeln!(out, "edge {id} {c}");
                }
            }
            Node::Leaf { .. } => {}
        }
    }
    let _ = writeln!(out, "root {root}");
    out
}
