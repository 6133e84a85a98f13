use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::communities::Communities;
use crate::metric::InducedMetric;
use crate::quality::{modularity, score_partition, MedianScope};
use crate::scalar::Real;
use crate::seeds::derive_seed;

use super::{partition_k, ClusterConfig, ClusterError, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Criterion {
    /// maximized
    #[default]
    Modularity,
    /// volume-weighted mean conductance, minimized
    Conductance,
}

impl Criterion {
    fn score<T: Real>(self, metric: &InducedMetric<'_, T>, parts: &Communities) -> Option<T> {
        let g = metric.graph();
        match self {
            Criterion::Modularity => modularity(g, parts).ok(),
            Criterion::Conductance => {
                score_partition::<T>(g, parts, MedianScope::Community).ok().and_then(|s| s.mean_conductance)
            }
        }
    }

    /// True when `a` is strictly better than `b`; an undefined score loses.
    fn better<T: Real>(self, a: Option<T>, b: Option<T>) -> bool {
        match (a, b) {
            (Some(a), Some(b)) => match self {
                Criterion::Modularity => a > b,
                Criterion::Conductance => a < b,
            },
            (Some(_), None) => true,
            _ => false,
        }
    }
}

/// Best restart at one `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct KDiagnostic<T> {
    pub k: usize,
    pub score: Option<T>,
    pub cost: T,
    pub restart: usize,
    pub seed: u64,
    pub iterations: usize,
    pub intra_similarity: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection<T> {
    pub best_k: usize,
    pub best: Partition<T>,
    pub diagnostics: Vec<KDiagnostic<T>>,
}

/// Runs `restarts` seeded partitionings for each `k` in range and keeps the
/// best by `criterion`. Ties go to the earlier restart and the smaller `k`.
pub fn select_k<T: Real>(
    metric: &InducedMetric<'_, T>,
    k_range: RangeInclusive<usize>,
    criterion: Criterion,
    restarts: usize,
    master_seed: u64,
    base: &ClusterConfig,
) -> Result<Selection<T>, ClusterError> {
    if k_range.is_empty() || restarts == 0 {
        return Err(ClusterError::EmptyRange);
    }
    let n = metric.n();
    if *k_range.start() == 0 || *k_range.end() > n {
        let bad = if *k_range.start() == 0 { 0 } else { *k_range.end() };
        return Err(ClusterError::InvalidK { k: bad, n });
    }

    let mut best: Option<(Option<T>, Partition<T>)> = None;
    let mut diagnostics = Vec::new();
    for k in k_range {
        let mut at_k: Option<(Option<T>, Partition<T>, usize)> = None;
        for r in 0..restarts {
            let seed = derive_seed(master_seed, &format!("init/k{k}"), r as u64);
            let cfg = ClusterConfig { k, seed, ..*base };
            let p = partition_k(metric, &cfg)?;
            let s = criterion.score(metric, &p.communities);
            if at_k.as_ref().is_none_or(|(bs, _, _)| criterion.better(s, *bs)) {
                at_k = Some((s, p, r));
            }
        }
        let (score, p, restart) = at_k.expect("restarts >= 1");
        diagnostics.push(KDiagnostic {
            k,
            score,
            cost: p.cost,
            restart,
            seed: p.seed,
            iterations: p.iterations,
            intra_similarity: intra_similarity_objective(metric, &p.communities),
        });
        if best.as_ref().is_none_or(|(bs, _)| criterion.better(score, *bs)) {
            best = Some((score, p));
        }
    }
    let (_, best) = best.expect("non-empty range");
    Ok(Selection { best_k: best.k(), best, diagnostics })
}

/// `min` over communities with at least two members of the largest
/// similarity between two distinct members. Undefined similarities count
/// as −1. Reported for inspection only; nothing optimizes it.
pub fn intra_similarity_objective<T: Real>(metric: &InducedMetric<'_, T>, parts: &Communities) -> Option<T> {
    parts
        .members()
        .par_iter()
        .filter(|m| m.len() >= 2)
        .map(|m| {
            let mut top = -T::one();
            for (a, &u) in m.iter().enumerate() {
                for &v in &m[a + 1..] {
                    top = top.max(metric.similarity(u, v).unwrap_or(-T::one()));
                }
            }
            top
        })
        .reduce_with(T::min)
}
