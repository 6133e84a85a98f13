//! The modified adjacency matrix `D(λ) + A`.

use crate::graph::{Graph, NodeId};
use crate::scalar::Real;

use super::MetricError;

/// Diagonal weighting of the modified adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaPolicy<T> {
    /// The same non-negative value on every diagonal entry.
    Constant(T),
    /// `λ_x = deg(x)`.
    Degree,
    /// `λ_x = 2m / n` for every node.
    MeanDegree,
}

impl<T: Real> Default for LambdaPolicy<T> {
    fn default() -> Self {
        LambdaPolicy::Constant(T::lit(2.0))
    }
}

impl<T: Real> LambdaPolicy<T> {
    fn diagonal(&self, g: &Graph) -> Result<Vec<T>, MetricError> {
        match *self {
            LambdaPolicy::Constant(lambda) => {
                if !(lambda >= T::zero()) || !lambda.is_finite() {
                    return Err(MetricError::NegativeLambda(lambda.to_f64_lossy()));
                }
                Ok(vec![lambda; g.n()])
            }
            LambdaPolicy::Degree => Ok((0..g.n()).map(|v| T::from_count(g.degree(v))).collect()),
            LambdaPolicy::MeanDegree => {
                let mean = if g.n() == 0 {
                    T::zero()
                } else {
                    T::from_count(2 * g.m()) / T::from_count(g.n())
                };
                Ok(vec![mean; g.n()])
            }
        }
    }
}

/// Row view of `D(λ) + A`. Only the diagonal is stored; off-diagonal
/// entries are read from the graph's adjacency.
#[derive(Debug, Clone)]
pub struct RowMatrix<'g, T> {
    graph: &'g Graph,
    diag: Vec<T>,
    norms: Vec<T>,
    policy: LambdaPolicy<T>,
}

impl<'g, T: Real> RowMatrix<'g, T> {
    pub fn build(graph: &'g Graph, policy: LambdaPolicy<T>) -> Result<Self, MetricError> {
        let diag = policy.diagonal(graph)?;
        let norms = (0..graph.n())
            .map(|v| (diag[v] * diag[v] + T::from_count(graph.degree(v))).sqrt())
            .collect();
        Ok(Self { graph, diag, norms, policy })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn policy(&self) -> LambdaPolicy<T> {
        self.policy
    }

    pub fn diag(&self, v: NodeId) -> T {
        self.diag[v]
    }

    /// Cached Euclidean norm of row `v`.
    pub fn norm(&self, v: NodeId) -> T {
        self.norms[v]
    }

    /// Non-zero entries of row `v`, ascending by column.
    pub fn row(&self, v: NodeId) -> Vec<(NodeId, T)> {
        let nbrs = self.graph.neighbors(v);
        let mut out = Vec::with_capacity(nbrs.len() + 1);
        let split = nbrs.partition_point(|&w| w < v);
        out.extend(nbrs[..split].iter().map(|&w| (w, T::one())));
        if self.diag[v] != T::zero() {
            out.push((v, self.diag[v]));
        }
        out.extend(nbrs[split..].iter().map(|&w| (w, T::one())));
        out
    }

    pub fn dense_row(&self, v: NodeId) -> Vec<T> {
        let mut out = vec![T::zero(); self.n()];
        for (c, x) in self.row(v) {
            out[c] = x;
        }
        out
    }

    /// `a_u · a_v`, using the common-neighbor count for the adjacency part.
    pub fn dot(&self, u: NodeId, v: NodeId) -> T {
        if u == v {
            return self.diag[u] * self.diag[u] + T::from_count(self.graph.degree(u));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let mut dot = T::from_count(self.graph.common_neighbors(a, b));
        if self.graph.has_edge(a, b) {
            dot = dot + self.diag[a] + self.diag[b];
        }
        dot
    }
}
