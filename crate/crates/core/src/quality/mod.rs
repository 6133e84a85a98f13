//! Community quality measures.
//!
//! Everything is derived from integer edge counts, so the measures are
//! generic over [`Scalar`] and exact when evaluated with rationals.

mod scorecard;
mod stats;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::communities::Communities;
use crate::graph::{Graph, NodeId};
use crate::scalar::Scalar;

pub use scorecard::{score_community, MedianScope, ScoreCard, MEASURE_NAMES};
pub use stats::CommunityStats;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QualityError {
    #[error("node set is empty")]
    EmptySet,
    #[error("node {0} out of range")]
    NodeOutOfRange(NodeId),
    #[error("node set covers the whole graph")]
    DegenerateSet,
    #[error("{0} is undefined for this input")]
    UndefinedMeasure(&'static str),
    #[error("partition covers {got} nodes, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

fn check_cover(g: &Graph, parts: &Communities) -> Result<(), QualityError> {
    if parts.n() != g.n() {
        return Err(QualityError::SizeMismatch { expected: g.n(), got: parts.n() });
    }
    Ok(())
}

fn modularity_from<T: Scalar>(m: usize, per_community: impl Iterator<Item = (usize, usize)>) -> T {
    let two_m = T::from_count(2 * m);
    per_community.fold(T::zero(), |acc, (m_c, vol_c)| {
        let share = T::from_count(vol_c) / two_m;
        acc + T::from_count(m_c) / T::from_count(m) - share * share
    })
}

/// Newman modularity of a partition.
pub fn modularity<T: Scalar>(g: &Graph, parts: &Communities) -> Result<T, QualityError> {
    check_cover(g, parts)?;
    if g.m() == 0 {
        return Err(QualityError::UndefinedMeasure("modularity"));
    }
    let k = parts.k();
    let mut internal = vec![0usize; k];
    let mut volume = vec![0usize; k];
    for (u, v) in g.edges() {
        let (cu, cv) = (parts.community_of(u), parts.community_of(v));
        if cu == cv {
            internal[cu] += 1;
        }
        volume[cu] += 1;
        volume[cv] += 1;
    }
    Ok(modularity_from(g.m(), internal.into_iter().zip(volume)))
}

/// Cut edges over the smaller side volume.
pub fn conductance<T: Scalar>(g: &Graph, set: &[NodeId]) -> Result<T, QualityError> {
    if set.is_empty() {
        return Err(QualityError::EmptySet);
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return Err(QualityError::NodeOutOfRange(v));
    }
    let stats = CommunityStats::compute(g, set);
    if stats.n_s() == g.n() {
        return Err(QualityError::DegenerateSet);
    }
    let low = stats.vol_s.min(2 * g.m() - stats.vol_s);
    if low == 0 {
        return Err(QualityError::UndefinedMeasure("conductance"));
    }
    Ok(T::from_count(stats.c_s) / T::from_count(low))
}

/// Per-community cards plus partition-level aggregates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionScores<T> {
    pub cards: Vec<ScoreCard<T>>,
    pub modularity: Option<T>,
    /// Volume-weighted mean of the defined community conductances; `None`
    /// when no community has one.
    pub mean_conductance: Option<T>,
}

pub fn score_partition<T: Scalar>(
    g: &Graph,
    parts: &Communities,
    median: MedianScope,
) -> Result<PartitionScores<T>, QualityError> {
    check_cover(g, parts)?;
    let assignment = parts.assignment();
    let members = parts.members();
    let stats: Vec<CommunityStats> = members
        .into_par_iter()
        .enumerate()
        .map(|(c, mem)| CommunityStats::compute_with(g, mem, |w| assignment[w] == c))
        .collect();
    let cards: Vec<ScoreCard<T>> = stats
        .par_iter()
        .enumerate()
        .map(|(c, s)| scorecard::card_from_stats(g, s, |w| assignment[w] == c, median))
        .collect();

    let modularity = (g.m() > 0).then(|| modularity_from(g.m(), stats.iter().map(|s| (s.m_s, s.vol_s))));

    let mut weighted = T::zero();
    let mut weight = 0;
    for (s, card) in stats.iter().zip(&cards) {
        if let Some(phi) = card.conductance {
            weighted = weighted + phi * T::from_count(s.vol_s);
            weight += s.vol_s;
        }
    }
    let mean_conductance = (weight > 0).then(|| weighted / T::from_count(weight));

    Ok(PartitionScores { cards, modularity, mean_conductance })
}
