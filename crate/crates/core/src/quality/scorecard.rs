use serde::{Deserialize, Serialize};

use crate::graph::{Graph, NodeId};
use crate::scalar::{max_of, ratio, Scalar};

use super::stats::CommunityStats;
use super::QualityError;

/// Reference median for the fraction-over-median-degree measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MedianScope {
    /// Median degree over the nodes of `S`.
    #[default]
    Community,
    /// Median degree over the whole graph.
    Network,
}

/// Canonical measure names, in reporting (column) order.
pub const MEASURE_NAMES: [&str; 13] = [
    "modularity",
    "internal_density",
    "edges_inside",
    "average_degree",
    "fomd",
    "tpr",
    "expansion",
    "cut_ratio",
    "conductance",
    "normalized_cut",
    "max_odf",
    "avg_odf",
    "flake_odf",
];

/// Every quality measure for one node set. `None` marks a measure that is
/// undefined for this set (a zero denominator).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreCard<T> {
    /// This community's term of the partition modularity.
    pub modularity: Option<T>,
    pub internal_density: T,
    pub edges_inside: usize,
    pub average_degree: T,
    pub fomd: T,
    pub tpr: T,
    pub expansion: T,
    pub cut_ratio: Option<T>,
    pub conductance: Option<T>,
    pub normalized_cut: Option<T>,
    pub max_odf: T,
    pub avg_odf: T,
    pub flake_odf: T,
}

impl<T: Scalar> ScoreCard<T> {
    /// Values in [`MEASURE_NAMES`] order, converted to `f64`.
    pub fn values(&self) -> [Option<f64>; 13] {
        let f = |x: T| x.to_f64();
        [
            self.modularity.and_then(f),
            f(self.internal_density),
            Some(self.edges_inside as f64),
            f(self.average_degree),
            f(self.fomd),
            f(self.tpr),
            f(self.expansion),
            self.cut_ratio.and_then(f),
            self.conductance.and_then(f),
            self.normalized_cut.and_then(f),
            f(self.max_odf),
            f(self.avg_odf),
            f(self.flake_odf),
        ]
    }
}

/// `2·x > lo + hi` decides `x > median` without fractions.
fn median_bounds(mut degrees: Vec<usize>) -> (usize, usize) {
    degrees.sort_unstable();
    let len = degrees.len();
    if len % 2 == 1 {
        (degrees[len / 2], degrees[len / 2])
    } else {
        (degrees[len / 2 - 1], degrees[len / 2])
    }
}

/// True when `v` lies on a triangle whose vertices all satisfy `inside`.
fn in_internal_triangle<F: Fn(NodeId) -> bool>(g: &Graph, v: NodeId, inside: &F) -> bool {
    let nv: Vec<NodeId> = g.neighbors(v).iter().copied().filter(|&w| inside(w)).collect();
    nv.iter().any(|&u| {
        let nu = g.neighbors(u);
        let (mut i, mut j) = (0, 0);
        while i < nv.len() && j < nu.len() {
            match nv[i].cmp(&nu[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    })
}

pub(crate) fn card_from_stats<T: Scalar, F: Fn(NodeId) -> bool>(
    g: &Graph,
    stats: &CommunityStats,
    inside: F,
    median: MedianScope,
) -> ScoreCard<T> {
    let n = g.n();
    let m = g.m();
    let n_s = stats.n_s();
    let (m_s, c_s, vol_s) = (stats.m_s, stats.c_s, stats.vol_s);

    let modularity = (m > 0).then(|| {
        let share = T::from_count(vol_s) / T::from_count(2 * m);
        T::from_count(m_s) / T::from_count(m) - share * share
    });

    let internal_density = if n_s < 2 {
        T::zero()
    } else {
        T::from_count(m_s) / T::from_count(n_s * (n_s - 1) / 2)
    };

    let (lo, hi) = match median {
        MedianScope::Community => median_bounds(stats.members.iter().map(|&v| g.degree(v)).collect()),
        MedianScope::Network => median_bounds((0..n).map(|v| g.degree(v)).collect()),
    };
    let above_median = stats.internal_degree.iter().filter(|&&d| 2 * d > lo + hi).count();

    let tpr_count = if n_s < 3 {
        0
    } else {
        stats.members.iter().filter(|&&v| in_internal_triangle(g, v, &inside)).count()
    };

    let vol_rest = 2 * m - vol_s;
    let conductance = ratio(c_s, vol_s.min(vol_rest));
    let normalized_cut = match (ratio::<T>(c_s, 2 * m_s + c_s), ratio::<T>(c_s, 2 * (m - m_s) + c_s)) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };

    let mut max_odf = T::zero();
    let mut odf_sum = T::zero();
    let mut flake = 0;
    for (&int, &ext) in stats.internal_degree.iter().zip(&stats.external_degree) {
        // isolated members have no external edges: fraction 0
        let frac = ratio::<T>(ext, int + ext).unwrap_or_else(T::zero);
        max_odf = max_of(max_odf, frac);
        odf_sum = odf_sum + frac;
        if int < ext {
            flake += 1;
        }
    }

    ScoreCard {
        modularity,
        internal_density,
        edges_inside: m_s,
        average_degree: T::from_count(2 * m_s) / T::from_count(n_s),
        fomd: T::from_count(above_median) / T::from_count(n_s),
        tpr: T::from_count(tpr_count) / T::from_count(n_s),
        expansion: T::from_count(c_s) / T::from_count(n_s),
        cut_ratio: ratio(c_s, n_s * (n - n_s)),
        conductance,
        normalized_cut,
        max_odf,
        avg_odf: odf_sum / T::from_count(n_s),
        flake_odf: T::from_count(flake) / T::from_count(n_s),
    }
}

/// All thirteen measures for the node set `set`.
pub fn score_community<T: Scalar>(g: &Graph, set: &[NodeId], median: MedianScope) -> Result<ScoreCard<T>, QualityError> {
    if set.is_empty() {
        return Err(QualityError::EmptySet);
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return Err(QualityError::NodeOutOfRange(v));
    }
    let mut mask = vec![false; g.n()];
    for &v in set {
        mask[v] = true;
    }
    let members = (0..g.n()).filter(|&v| mask[v]).collect();
    let stats = CommunityStats::compute_with(g, members, |w| mask[w]);
    Ok(card_from_stats(g, &stats, |w| mask[w], median))
}
