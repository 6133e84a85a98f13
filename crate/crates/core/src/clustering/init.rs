use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::NodeId;
use crate::metric::InducedMetric;
use crate::scalar::Real;

use super::ClusterError;

fn check_k(k: usize, n: usize) -> Result<(), ClusterError> {
    if k == 0 || k > n {
        return Err(ClusterError::InvalidK { k, n });
    }
    Ok(())
}

/// Gonzalez traversal: a seeded uniform first center, then repeatedly the
/// node farthest from every chosen center (lowest index on ties).
pub fn farthest_first<T: Real>(metric: &InducedMetric<'_, T>, k: usize, seed: u64) -> Result<Vec<NodeId>, ClusterError> {
    check_k(k, metric.n())?;
    let first = ChaCha8Rng::seed_from_u64(seed).gen_range(0..metric.n());
    farthest_first_from(metric, k, first)
}

/// Gonzalez traversal from a given first center.
pub fn farthest_first_from<T: Real>(
    metric: &InducedMetric<'_, T>,
    k: usize,
    first: NodeId,
) -> Result<Vec<NodeId>, ClusterError> {
    let n = metric.n();
    check_k(k, n)?;
    if first >= n {
        return Err(ClusterError::InvalidCenters { k, n });
    }
    let mut centers = vec![first];
    let mut chosen = vec![false; n];
    chosen[first] = true;
    let mut nearest: Vec<T> = (0..n).into_par_iter().map(|v| metric.distance(v, first)).collect();

    while centers.len() < k {
        let mut best: Option<(NodeId, T)> = None;
        for (v, &d) in nearest.iter().enumerate() {
            if chosen[v] {
                continue;
            }
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        let (next, _) = best.expect("k <= n leaves an unchosen node");
        chosen[next] = true;
        centers.push(next);
        nearest.par_iter_mut().enumerate().for_each(|(v, d)| {
            let dn = metric.distance(v, next);
            if dn < *d {
                *d = dn;
            }
        });
    }
    Ok(centers)
}

/// `k` distinct nodes drawn uniformly.
pub fn random_centers(n: usize, k: usize, seed: u64) -> Result<Vec<NodeId>, ClusterError> {
    check_k(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(rand::seq::index::sample(&mut rng, n, k).into_vec())
}

/// k-center objective: the largest distance from a node to its nearest center.
pub fn kcenter_radius<T: Real>(metric: &InducedMetric<'_, T>, centers: &[NodeId]) -> T {
    (0..metric.n())
        .into_par_iter()
        .map(|v| centers.iter().map(|&c| metric.distance(v, c)).fold(T::infinity(), T::min))
        .reduce(T::zero, T::max)
}
