//! SNAP-style edge list reading and canonical writing.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{Graph, GraphError, NodeId};

/// How arcs that appear in one direction only are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DirectedPolicy {
    /// Every line is an undirected edge.
    #[default]
    Symmetrize,
    /// Lines are arcs; every arc must have its reverse in the input.
    Reject,
}

/// Reads `u v` lines. Lines starting with `#` and blank lines are skipped.
/// Node ids are assigned in first-seen order.
pub fn load_edge_list<R: BufRead>(reader: R, policy: DirectedPolicy) -> Result<Graph, GraphError> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut arcs: Vec<(NodeId, NodeId)> = Vec::new();

    let mut intern = |tok: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = ids.get(tok) {
            return id;
        }
        let id = labels.len();
        labels.push(tok.to_owned());
        ids.insert(tok.to_owned(), id);
        id
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let (a, b) = match (toks.next(), toks.next(), toks.next()) {
            (Some(a), Some(b), None) => (a, b),
            (Some(_), None, _) => {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: "expected two node tokens, found one".into(),
                })
            }
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: "expected exactly two node tokens".into(),
                })
            }
        };
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        if u != v {
            arcs.push((u, v));
        }
    }

    if policy == DirectedPolicy::Reject {
        arcs.sort_unstable();
        arcs.dedup();
        for &(u, v) in &arcs {
            if arcs.binary_search(&(v, u)).is_err() {
                return Err(GraphError::Asymmetric {
                    from: labels[u].clone(),
                    to: labels[v].clone(),
                });
            }
        }
    }

    Graph::with_labels(labels, arcs)
}

/// Writes one `u v` line per edge with `u < v` (internal order), ascending.
pub fn serialize_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    Ok(())
}
