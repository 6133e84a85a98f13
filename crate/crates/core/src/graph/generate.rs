//! Deterministic synthetic graphs for fixtures and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, NodeId};

#[derive(Debug, Clone, PartialEq)]
pub enum GraphKind {
    Clique { q: usize },
    Path { n: usize },
    Ring { n: usize },
    Gnp { n: usize, p: f64, seed: u64 },
    /// `blocks` groups of `size` nodes; node `i` belongs to block `i / size`.
    PlantedPartition { blocks: usize, size: usize, p_in: f64, p_out: f64, seed: u64 },
}

/// A generated graph plus the ground-truth block of each node, when the
/// generator plants one.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub blocks: Option<Vec<usize>>,
}

fn check_prob(name: &str, p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GraphError::InvalidParameter(format!("{name} = {p} outside [0, 1]")))
    }
}

fn check_positive(name: &str, v: usize) -> Result<(), GraphError> {
    if v == 0 {
        Err(GraphError::InvalidParameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

pub fn generate(kind: &GraphKind) -> Result<Generated, GraphError> {
    let (n, edges, blocks): (usize, Vec<(NodeId, NodeId)>, Option<Vec<usize>>) = match *kind {
        GraphKind::Clique { q } => {
            check_positive("q", q)?;
            let edges = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v))).collect();
            (q, edges, None)
        }
        GraphKind::Path { n } => {
            check_positive("n", n)?;
            (n, (1..n).map(|v| (v - 1, v)).collect(), None)
        }
        GraphKind::Ring { n } => {
            if n < 3 {
                return Err(GraphError::InvalidParameter("ring needs n >= 3".into()));
            }
            (n, (0..n).map(|v| (v, (v + 1) % n)).collect(), None)
        }
        GraphKind::Gnp { n, p, seed } => {
            check_positive("n", n)?;
            check_prob("p", p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            (n, edges, None)
        }
        GraphKind::PlantedPartition { blocks, size, p_in, p_out, seed } => {
            check_positive("blocks", blocks)?;
            check_positive("size", size)?;
            check_prob("p_in", p_in)?;
            check_prob("p_out", p_out)?;
            let n = blocks * size;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let p = if u / size == v / size { p_in } else { p_out };
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            (n, edges, Some((0..n).map(|v| v / size).collect()))
        }
    };
    Ok(Generated { graph: Graph::from_edges(n, edges)?, blocks })
}
