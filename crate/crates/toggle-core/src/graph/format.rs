//! Plain-text exchange format for graphs and positions.
//!
//! ```text
//! toggle-graph 1
//! n 4
//! e 0 1
//! e 1 2
//! e 2 3
//! w 1101
//! l 0 root
//! ```
//!
//! The header line comes first, `n` must precede every `e`/`w`/`l` record,
//! and `#` starts a full-line comment.  Blank lines are ignored.  A missing
//! `w` record means the all-ones assignment.

use std::sync::Arc;

use crate::bits::Weights;
use crate::error::{Error, Result};
use crate::graph::{GamePosition, Graph};

const HEADER: &str = "toggle-graph 1";

/// Parses a document; the weight record is optional.
pub fn parse(text: &str) -> Result<(Graph, Option<Weights>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((no, l)) => {
            return Err(Error::input(format!(
                "line {no}: expected header '{HEADER}', found '{l}'"
            )))
        }
        None => return Err(Error::input("empty document")),
    }

    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut weights: Option<(usize, Weights)> = None;
    let mut labels: Vec<(usize, String)> = Vec::new();

    for (no, line) in lines {
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        match tag {
            "n" => {
                if n.is_some() {
                    return Err(Error::input(format!("line {no}: repeated 'n' record")));
                }
                let [count] = rest[..] else {
                    return Err(Error::input(format!("line {no}: 'n' takes one field")));
                };
                let count: usize = count
                    .parse()
                    .map_err(|_| Error::input(format!("line {no}: bad vertex count '{count}'")))?;
                n = Some(count);
            }
            "e" => {
                let nv = require_n(n, no)?;
                let [u, v] = rest[..] else {
                    return Err(Error::input(format!("line {no}: 'e' takes two fields")));
                };
                let u = parse_vertex(u, nv, no)?;
                let v = parse_vertex(v, nv, no)?;
                if u == v {
                    return Err(Error::input(format!("line {no}: self-loop at {u}")));
                }
                if edges
                    .iter()
                    .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
                {
                    return Err(Error::input(format!("line {no}: duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            "w" => {
                let nv = require_n(n, no)?;
                if weights.is_some() {
                    return Err(Error::input(format!("line {no}: repeated 'w' record")));
                }
                let [bits] = rest[..] else {
                    return Err(Error::input(format!("line {no}: 'w' takes one field")));
                };
                if bits.len() != nv {
                    return Err(Error::input(format!(
                        "line {no}: weight string has {} bits, expected {nv}",
                        bits.len()
                    )));
                }
                let w = Weights::from_bitstring(bits)
                    .map_err(|e| Error::input(format!("line {no}: {e}")))?;
                weights = Some((no, w));
            }
            "l" => {
                let nv = require_n(n, no)?;
                if rest.len() < 2 {
                    return Err(Error::input(format!(
                        "line {no}: 'l' takes an index and a label"
                    )));
                }
                let v = parse_vertex(rest[0], nv, no)?;
                labels.push((v, rest[1..].join(" ")));
            }
            other => {
                return Err(Error::input(format!(
                    "line {no}: unknown record type '{other}'"
                )))
            }
        }
    }

    let n = n.ok_or_else(|| Error::input("missing 'n' record"))?;
    let mut graph = Graph::new(n, &edges)?;
    for (v, label) in labels {
        graph.set_label(v, label)?;
    }
    Ok((graph, weights.map(|(_, w)| w)))
}

/// Parses a document into a position; a missing `w` record means all-ones.
pub fn parse_position(text: &str) -> Result<GamePosition> {
    let (graph, weights) = parse(text)?;
    let graph = Arc::new(graph);
    match weights {
        Some(w) => GamePosition::new(graph, w),
        None => Ok(GamePosition::all_ones(graph)),
    }
}

/// Serializes a graph (and optional weights) in the documented layout:
/// header, `n`, sorted `e` records, `w`, then `l` records.
pub fn serialize(graph: &Graph, weights: Option<&Weights>) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n {}\n", graph.vertex_count()));
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    if let Some(w) = weights {
        out.push_str(&format!("w {}\n", w.to_bitstring()));
    }
    for (v, label) in graph.labels() {
        out.push_str(&format!("l {v} {label}\n"));
    }
    out
}

pub fn serialize_position(position: &GamePosition) -> String {
    serialize(&position.graph, Some(&position.weights))
}

fn require_n(n: Option<usize>, line: usize) -> Result<usize> {
    n.ok_or_else(|| Error::input(format!("line {line}: record appears before 'n'")))
}

fn parse_vertex(field: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = field
        .parse()
        .map_err(|_| Error::input(format!("line {line}: bad vertex '{field}'")))?;
    if v >= n {
        return Err(Error::input(format!(
            "line {line}: vertex {v} out of range (n = {n})"
        )));
    }
    Ok(v)
}
