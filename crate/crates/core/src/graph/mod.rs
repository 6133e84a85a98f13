//! Undirected simple graphs in compressed-sparse-row form.

mod generate;
mod io;
mod traversal;

use std::collections::HashMap;

use thiserror::Error;

pub use generate::{generate, Generated, GraphKind};
pub use io::{load_edge_list, serialize_edge_list, DirectedPolicy};
pub use traversal::{bfs_distances, connected_components, UNREACHABLE};

/// Dense internal node index in `0..n`.
pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("asymmetric input: arc {from} -> {to} has no reverse arc")]
    Asymmetric { from: String, to: String },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("edge endpoint {0} out of range")]
    NodeOutOfRange(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable undirected simple graph.
///
/// Neighbor lists are sorted ascending and free of self-loops and
/// duplicates; every edge is stored in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph over nodes labelled `"0".."n-1"`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Builds a graph with explicit external labels. Self-loops and
    /// duplicate edges are dropped; each pair is stored symmetrically.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::NodeOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::NodeOutOfRange(v));
            }
            if u != v {
                pairs.push((u, v));
                pairs.push((v, u));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Self { offsets, targets, labels })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Map from external label to internal id.
    pub fn label_index(&self) -> HashMap<&str, NodeId> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Number of common neighbors, by merging the two sorted lists.
    pub fn common_neighbors(&self, u: NodeId, v: NodeId) -> usize {
        sorted_intersection_len(self.neighbors(u), self.neighbors(v))
    }

    pub fn max_degree_node(&self) -> Option<NodeId> {
        // lowest index wins ties
        (0..self.n()).max_by(|&a, &b| self.degree(a).cmp(&self.degree(b)).then(b.cmp(&a)))
    }

    /// Subgraph induced by `nodes` (given in the order that defines the new ids).
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let labels = nodes.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = nodes.iter().enumerate().flat_map(|(i, &v)| {
            let local = &local;
            self.neighbors(v)
                .iter()
                .filter(move |&&w| local[w] != usize::MAX && local[w] > i)
                .map(move |&w| (i, local[w]))
        });
        Graph::with_labels(labels, edges.collect::<Vec<_>>()).expect("induced ids are in range")
    }

    /// Sorted `(label, label)` pairs, each with the smaller label first.
    /// Two graphs with equal output are the same labelled graph.
    pub fn labeled_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.labels[u].clone(), self.labels[v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Checks symmetry, simplicity, sorted order and the degree sum.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        if self.offsets.len() != n + 1 || self.offsets[n] != self.targets.len() {
            return Err(GraphError::Invariant("offset table inconsistent".into()));
        }
        let mut degree_sum = 0;
        for u in 0..n {
            let nbrs = self.neighbors(u);
            degree_sum += nbrs.len();
            for w in nbrs.windows(2) {
                if w[0] >= w[1] {
                    return Err(GraphError::Invariant(format!(
                        "neighbors of {u} not strictly ascending"
                    )));
                }
            }
            for &v in nbrs {
                if v >= n {
                    return Err(GraphError::NodeOutOfRange(v));
                }
                if v == u {
                    return Err(GraphError::Invariant(format!("self-loop at {u}")));
                }
                if self.neighbors(v).binary_search(&u).is_err() {
                    return Err(GraphError::Invariant(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        if degree_sum != 2 * self.m() {
            return Err(GraphError::Invariant("degree sum differs from 2m".into()));
        }
        let mut seen: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::Invariant("duplicate node label".into()));
        }
        Ok(())
    }
}

pub(crate) fn sorted_intersection_len(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_loops_and_duplicates() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        g.validate().unwrap();
    }

    #[test]
    fn out_of_range_endpoint() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange(2))
        ));
    }

    #[test]
    fn max_degree_ties_to_lowest() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.max_degree_node(), Some(0));
        let star = Graph::from_edges(4, [(3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(star.max_degree_node(), Some(3));
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced_subgraph(&[2, 1, 3]);
        assert_eq!(h.labels(), &["2", "1", "3"]);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(0, 1) && h.has_edge(0, 2));
    }
}
