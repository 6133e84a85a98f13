//! Label propagation baseline.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::communities::Communities;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelState {
    /// Raw labels, each the id of some node.
    pub labels: Vec<NodeId>,
    pub communities: Communities,
    pub rounds: usize,
    pub converged: bool,
}

/// Labels occurring most often among the neighbors of `v`, ascending.
fn modal_labels(g: &Graph, labels: &[NodeId], v: NodeId, buf: &mut Vec<NodeId>) -> Vec<NodeId> {
    buf.clear();
    buf.extend(g.neighbors(v).iter().map(|&w| labels[w]));
    buf.sort_unstable();
    let mut best = Vec::new();
    let mut top = 0;
    for run in buf.chunk_by(|a, b| a == b) {
        if run.len() > top {
            top = run.len();
            best.clear();
        }
        if run.len() == top {
            best.push(run[0]);
        }
    }
    best
}

/// True when every node with neighbors holds one of its neighborhood modes.
pub fn is_label_fixed_point(g: &Graph, labels: &[NodeId]) -> bool {
    let mut buf = Vec::new();
    (0..g.n()).all(|v| g.degree(v) == 0 || modal_labels(g, labels, v, &mut buf).contains(&labels[v]))
}

/// Asynchronous label propagation. Each round visits the nodes in a fresh
/// seeded order; a node keeps its label while that label is among its
/// neighborhood modes and otherwise takes a uniformly drawn mode.
pub fn label_propagation(g: &Graph, seed: u64, max_rounds: usize) -> LabelState {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<NodeId> = (0..n).collect();
    let mut order: Vec<NodeId> = (0..n).collect();
    let mut buf = Vec::new();
    let mut rounds = 0;
    let mut converged = false;
    while rounds < max_rounds {
        rounds += 1;
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            if g.degree(v) == 0 {
                continue;
            }
            let modes = modal_labels(g, &labels, v, &mut buf);
            if !modes.contains(&labels[v]) {
                labels[v] = *modes.choose(&mut rng).expect("a node with neighbors has a mode");
                changed = true;
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    let communities = Communities::from_labels(&labels);
    LabelState { labels, communities, rounds, converged }
}
