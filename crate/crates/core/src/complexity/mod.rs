//! Structural statistics and the detectability score (DCC).

mod ocn;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bfs_distances, connected_components, sorted_intersection_len, Graph, NodeId, UNREACHABLE};

pub use ocn::{build_ocn_reference, OCN_METHOD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexityError {
    #[error("need at least two nodes, got {0}")]
    TooSmall(usize),
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOptions {
    /// Largest component size measured exactly.
    pub exact_limit: usize,
    /// BFS sources drawn when sampling.
    pub sources: usize,
    pub seed: u64,
}

impl Default for PathOptions {
    fn default() -> Self {
        Self { exact_limit: 10_000, sources: 512, seed: 0 }
    }
}

/// Mean hop distance over pairs of the largest connected component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    pub value: f64,
    pub sampled: bool,
    /// BFS sources used (the component size in exact mode).
    pub sources: usize,
    /// Standard error of the sampled estimate.
    pub std_error: Option<f64>,
    pub component_size: usize,
    pub disconnected: bool,
}

fn largest_component(g: &Graph) -> (Vec<NodeId>, bool) {
    let comps = connected_components(g);
    let disconnected = comps.len() > 1;
    // first of the largest, i.e. the one with the smallest member
    let best = comps.into_iter().fold(Vec::new(), |best, c| if c.len() > best.len() { c } else { best });
    (best, disconnected)
}

/// Sum of hop counts from `s` to every reachable node.
fn distance_sum(g: &Graph, s: NodeId) -> u64 {
    bfs_distances(g, s).into_iter().filter(|&d| d != UNREACHABLE).map(u64::from).sum()
}

pub fn average_path_length(g: &Graph, opts: &PathOptions) -> Result<PathLength, ComplexityError> {
    if g.n() < 2 {
        return Err(ComplexityError::TooSmall(g.n()));
    }
    let (comp, disconnected) = largest_component(g);
    let size = comp.len();
    if size < 2 {
        return Ok(PathLength {
            value: 0.0,
            sampled: false,
            sources: size,
            std_error: None,
            component_size: size,
            disconnected,
        });
    }
    let others = (size - 1) as f64;

    if size <= opts.exact_limit {
        let total: u64 = comp.par_iter().map(|&s| distance_sum(g, s)).sum();
        return Ok(PathLength {
            value: total as f64 / (size as f64 * others),
            sampled: false,
            sources: size,
            std_error: None,
            component_size: size,
            disconnected,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let picks: Vec<NodeId> = (0..opts.sources.max(2)).map(|_| comp[rng.gen_range(0..size)]).collect();
    let means: Vec<f64> = picks.par_iter().map(|&s| distance_sum(g, s) as f64 / others).collect();
    let count = means.len() as f64;
    let mean = means.iter().sum::<f64>() / count;
    let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1.0);
    Ok(PathLength {
        value: mean,
        sampled: true,
        sources: means.len(),
        std_error: Some((var / count).sqrt()),
        component_size: size,
        disconnected,
    })
}

/// Edges among the neighbors of `v` over the number of neighbor pairs;
/// 0 below degree 2.
pub fn clustering_coefficient(g: &Graph, v: NodeId) -> f64 {
    let d = g.degree(v);
    if d < 2 {
        return 0.0;
    }
    let nbrs = g.neighbors(v);
    let twice_t: usize = nbrs.iter().map(|&u| sorted_intersection_len(nbrs, g.neighbors(u))).sum();
    (twice_t / 2) as f64 / (d * (d - 1) / 2) as f64
}

/// Mean clustering coefficient over nodes of degree at least 2 (0 if none).
pub fn average_clustering(g: &Graph) -> f64 {
    let (sum, count) = (0..g.n())
        .into_par_iter()
        .filter(|&v| g.degree(v) >= 2)
        .map(|v| (clustering_coefficient(g, v), 1usize))
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0), |(s, c), (x, k)| (s + x, c + k));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub n: usize,
    pub m: usize,
    pub avg_path_length: f64,
    pub avg_clustering: f64,
    pub dcc: f64,
    pub method: String,
    pub sampled: bool,
    pub reference_overlap: usize,
    /// Path length is then measured on the largest component.
    pub disconnected: bool,
    pub path_sources: usize,
    pub path_std_error: Option<f64>,
}

/// Edges of `g` that also appear in its reference graph.
pub fn reference_overlap(g: &Graph, reference: &Graph) -> usize {
    g.edges().filter(|&(u, v)| reference.has_edge(u, v)).count()
}

pub fn dcc(g: &Graph, opts: &PathOptions) -> Result<ComplexityProfile, ComplexityError> {
    if g.m() == 0 {
        return Err(ComplexityError::NoEdges);
    }
    let paths = average_path_length(g, opts)?;
    let reference = build_ocn_reference(g);
    let overlap = reference_overlap(g, &reference);
    Ok(ComplexityProfile {
        n: g.n(),
        m: g.m(),
        avg_path_length: paths.value,
        avg_clustering: average_clustering(g),
        dcc: overlap as f64 / g.m() as f64,
        method: OCN_METHOD.to_string(),
        sampled: paths.sampled,
        reference_overlap: overlap,
        disconnected: paths.disconnected,
        path_sources: paths.sources,
        path_std_error: paths.std_error,
    })
}
