//! Partitioning of the induced metric space.
//!
//! Centers live on the unit sphere of the transformed row space. A node
//! goes to the center with the largest cosine, which is the nearest center
//! under the angular distance (and under any monotone `φ` of it).
//! Recentering takes the normalized mean of the members' unit rows, and
//! the tracked cost is `Σ (1 − cos(x̂, z))`.

mod init;
mod select;

use rayon::prelude::*;
use thiserror::Error;

use crate::communities::Communities;
use crate::graph::NodeId;
use crate::metric::InducedMetric;
use crate::scalar::Real;

pub use init::{farthest_first, farthest_first_from, kcenter_radius, random_centers};
pub use select::{intra_similarity_objective, select_k, Criterion, KDiagnostic, Selection};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("k = {k} outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("metric configuration is neither certified nor validated")]
    UnvalidatedMetric,
    #[error("empty k range")]
    EmptyRange,
    #[error("initial centers must be {k} nodes below {n}")]
    InvalidCenters { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Init {
    #[default]
    FarthestFirst,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterConfig {
    pub k: usize,
    pub init: Init,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once the cost moves by at most this much.
    pub tol: f64,
}

impl ClusterConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        Self { k, init: Init::FarthestFirst, seed, max_iter: 100, tol: 1e-12 }
    }
}

/// A node moved into an empty community during an iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepairEvent {
    pub iteration: usize,
    pub community: usize,
    pub node: NodeId,
    pub taken_from: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T> {
    pub communities: Communities,
    /// Dense unit vectors, one per community.
    pub centers: Vec<Vec<T>>,
    pub initial_centers: Vec<NodeId>,
    pub cost: T,
    /// Cost after each recentering, in order.
    pub cost_history: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
    pub repairs: Vec<RepairEvent>,
}

impl<T: Real> Partition<T> {
    pub fn assignment(&self) -> &[usize] {
        self.communities.assignment()
    }

    pub fn k(&self) -> usize {
        self.communities.k()
    }
}

/// Centers stored node-major (`zt[w * k + c]`) so that the cosines of one
/// node against every center come from one pass over its neighbors.
struct CenterSet<T> {
    k: usize,
    zt: Vec<T>,
    sums: Vec<T>,
}

impl<T: Real> CenterSet<T> {
    fn new(n: usize, k: usize) -> Self {
        Self { k, zt: vec![T::zero(); n * k], sums: vec![T::zero(); k] }
    }

    fn set(&mut self, c: usize, z: &[T]) {
        for (w, &x) in z.iter().enumerate() {
            self.zt[w * self.k + c] = x;
        }
        self.sums[c] = z.iter().fold(T::zero(), |a, &x| a + x);
    }

    fn column(&self, c: usize) -> Vec<T> {
        self.zt.iter().skip(c).step_by(self.k).copied().collect()
    }

    /// Cosine of node `v` to every center.
    fn cosines(&self, metric: &InducedMetric<'_, T>, v: NodeId, out: &mut [T]) {
        let r = metric.kernel_row(v);
        if r.is_zero() {
            out.fill(T::zero());
            return;
        }
        let k = self.k;
        out.fill(T::zero());
        for &w in metric.graph().neighbors(v) {
            for (o, &z) in out.iter_mut().zip(&self.zt[w * k..(w + 1) * k]) {
                *o = *o + z;
            }
        }
        let own = &self.zt[v * k..(v + 1) * k];
        for c in 0..k {
            let mut dot = r.edge * out[c] + r.diag * own[c];
            if r.offset != T::zero() {
                dot = dot + r.offset * self.sums[c];
            }
            out[c] = (dot / r.norm).max(-T::one()).min(T::one());
        }
    }
}

/// Unit row of `v`, or the basis vector `e_v` when the row vanishes.
fn seed_center<T: Real>(metric: &InducedMetric<'_, T>, v: NodeId) -> Vec<T> {
    let mut z = metric.unit_row(v);
    if metric.kernel_row(v).is_zero() {
        z[v] = T::one();
    }
    z
}

/// Nearest center per node (largest cosine, lowest index on ties) and that cosine.
fn assign<T: Real>(metric: &InducedMetric<'_, T>, centers: &CenterSet<T>) -> (Vec<usize>, Vec<T>) {
    let k = centers.k;
    (0..metric.n())
        .into_par_iter()
        .map_init(
            || vec![T::zero(); k],
            |buf, v| {
                centers.cosines(metric, v, buf);
                let mut best = 0;
                for c in 1..k {
                    if buf[c] > buf[best] {
                        best = c;
                    }
                }
                (best, buf[best])
            },
        )
        .unzip()
}

/// Fills empty communities by seizing, for each in turn, the node with the
/// smallest cosine to its own center among communities of size > 1.
fn repair_empty<T: Real>(
    metric: &InducedMetric<'_, T>,
    centers: &mut CenterSet<T>,
    assignment: &mut [usize],
    cos: &mut [T],
    iteration: usize,
    log: &mut Vec<RepairEvent>,
) {
    let mut sizes = vec![0usize; centers.k];
    for &c in assignment.iter() {
        sizes[c] += 1;
    }
    for empty in 0..centers.k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut pick: Option<NodeId> = None;
        for v in 0..assignment.len() {
            if sizes[assignment[v]] > 1 && pick.is_none_or(|p| cos[v] < cos[p]) {
                pick = Some(v);
            }
        }
        let v = pick.expect("k <= n leaves a community with a spare node");
        let from = assignment[v];
        sizes[from] -= 1;
        sizes[empty] = 1;
        assignment[v] = empty;
        if !metric.kernel_row(v).is_zero() {
            centers.set(empty, &metric.unit_row(v));
            cos[v] = T::one();
        }
        log::info!("iteration {iteration}: community {empty} was empty, took node {v} from {from}");
        log.push(RepairEvent { iteration, community: empty, node: v, taken_from: from });
    }
}

/// Normalized mean of the members' unit rows; `None` when the mean vanishes.
fn mean_direction<T: Real>(metric: &InducedMetric<'_, T>, members: &[NodeId]) -> Option<Vec<T>> {
    let mut dense = vec![T::zero(); metric.n()];
    let mut offset = T::zero();
    for &v in members {
        metric.accumulate_unit(v, &mut dense, &mut offset);
    }
    if offset != T::zero() {
        dense.iter_mut().for_each(|x| *x = *x + offset);
    }
    let norm = dense.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
    if norm <= T::epsilon() * T::from_count(members.len().max(1)) {
        return None;
    }
    dense.iter_mut().for_each(|x| *x = *x / norm);
    Some(dense)
}

fn recenter<T: Real>(metric: &InducedMetric<'_, T>, centers: &mut CenterSet<T>, assignment: &[usize]) {
    let mut members = vec![Vec::new(); centers.k];
    for (v, &c) in assignment.iter().enumerate() {
        members[c].push(v);
    }
    let means: Vec<Option<Vec<T>>> = members.par_iter().map(|m| mean_direction(metric, m)).collect();
    for (c, z) in means.into_iter().enumerate() {
        if let Some(z) = z {
            centers.set(c, &z);
        }
    }
}

fn total_cost<T: Real>(metric: &InducedMetric<'_, T>, centers: &CenterSet<T>, assignment: &[usize]) -> T {
    let per_node: Vec<T> = (0..metric.n())
        .into_par_iter()
        .map_init(
            || vec![T::zero(); centers.k],
            |buf, v| {
                centers.cosines(metric, v, buf);
                T::one() - buf[assignment[v]]
            },
        )
        .collect();
    per_node.into_iter().fold(T::zero(), |a, x| a + x)
}

/// `Σ (1 − cos(x̂, z_c(x)))` for explicit dense unit centers.
pub fn cost<T: Real>(metric: &InducedMetric<'_, T>, assignment: &[usize], centers: &[Vec<T>]) -> T {
    let mut set = CenterSet::new(metric.n(), centers.len());
    for (c, z) in centers.iter().enumerate() {
        set.set(c, z);
    }
    total_cost(metric, &set, assignment)
}

/// Iterative assign / recenter partitioning into `cfg.k` communities.
pub fn partition_k<T: Real>(metric: &InducedMetric<'_, T>, cfg: &ClusterConfig) -> Result<Partition<T>, ClusterError> {
    if !metric.is_usable() {
        return Err(ClusterError::UnvalidatedMetric);
    }
    let initial_centers = match cfg.init {
        Init::FarthestFirst => farthest_first(metric, cfg.k, cfg.seed)?,
        Init::Random => random_centers(metric.n(), cfg.k, cfg.seed)?,
    };
    partition_from_centers(metric, initial_centers, cfg)
}

/// Same iteration as [`partition_k`] started from explicit center nodes;
/// `cfg.init` is ignored and `cfg.k` must equal the number of centers.
pub fn partition_from_centers<T: Real>(
    metric: &InducedMetric<'_, T>,
    initial_centers: Vec<NodeId>,
    cfg: &ClusterConfig,
) -> Result<Partition<T>, ClusterError> {
    if !metric.is_usable() {
        return Err(ClusterError::UnvalidatedMetric);
    }
    let n = metric.n();
    let k = initial_centers.len();
    if k == 0 || k > n {
        return Err(ClusterError::InvalidK { k, n });
    }
    if k != cfg.k || initial_centers.iter().any(|&v| v >= n) {
        return Err(ClusterError::InvalidCenters { k: cfg.k, n });
    }
    let mut centers = CenterSet::new(n, k);
    for (c, &v) in initial_centers.iter().enumerate() {
        centers.set(c, &seed_center(metric, v));
    }

    let tol = T::lit(cfg.tol);
    let mut repairs = Vec::new();
    let (mut assignment, mut cos) = assign(metric, &centers);
    repair_empty(metric, &mut centers, &mut assignment, &mut cos, 0, &mut repairs);

    let mut cost_history: Vec<T> = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        iterations += 1;
        recenter(metric, &mut centers, &assignment);
        let c = total_cost(metric, &centers, &assignment);
        let settled = cost_history.last().is_some_and(|&prev| (prev - c).abs() <= tol);
        cost_history.push(c);
        if settled {
            converged = true;
            break;
        }
        let (mut next, mut next_cos) = assign(metric, &centers);
        repair_empty(metric, &mut centers, &mut next, &mut next_cos, iterations, &mut repairs);
        if next == assignment {
            converged = true;
            break;
        }
        assignment = next;
    }
    if !converged {
        log::warn!("partitioning stopped at the iteration cap ({})", cfg.max_iter);
    }

    let cost = *cost_history.last().expect("max_iter >= 1");
    let communities = Communities::from_assignment(assignment, k).expect("repair leaves no community empty");
    Ok(Partition {
        communities,
        centers: (0..k).map(|c| centers.column(c)).collect(),
        initial_centers,
        cost,
        cost_history,
        iterations,
        converged,
        seed: cfg.seed,
        repairs,
    })
}
