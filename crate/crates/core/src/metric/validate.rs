//! Empirical check of the pseudometric axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::NodeId;
use crate::scalar::Real;

use super::InducedMetric;

/// Absolute slack allowed in the triangle inequality.
pub const METRIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sample {
    /// Every ordered triple. Materializes an `n × n` table.
    Exhaustive,
    Random { triples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport<T> {
    pub passed: bool,
    /// Smallest `d(i,k) + d(k,j) − d(i,j)` seen.
    pub worst_slack: T,
    /// Triple attaining `worst_slack`, reported when the check fails.
    pub witness: Option<(NodeId, NodeId, NodeId)>,
    /// First violated axiom other than the triangle inequality.
    pub axiom_failure: Option<String>,
    pub triples_checked: usize,
}

type Worst<T> = (T, (NodeId, NodeId, NodeId));

fn pick<T: Real>(a: Worst<T>, b: Worst<T>) -> Worst<T> {
    // total order: slack, then triple, so parallel reduction is deterministic
    match a.0.partial_cmp(&b.0) {
        Some(std::cmp::Ordering::Less) => a,
        Some(std::cmp::Ordering::Greater) => b,
        _ => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

fn pair_axioms<T: Real>(d_ij: T, d_ji: T, i: NodeId, j: NodeId) -> Option<String> {
    if d_ij.is_nan() || d_ji.is_nan() {
        return Some(format!("d({i},{j}) is NaN"));
    }
    if i == j && d_ij != T::zero() {
        return Some(format!("d({i},{i}) = {d_ij:?} != 0"));
    }
    if d_ij < T::zero() {
        return Some(format!("d({i},{j}) = {d_ij:?} < 0"));
    }
    if d_ij != d_ji {
        return Some(format!("d({i},{j}) = {d_ij:?} != d({j},{i}) = {d_ji:?}"));
    }
    None
}

/// Checks non-negativity, `d(v,v) = 0`, exact symmetry and the triangle
/// inequality (within [`METRIC_TOLERANCE`]) over the sampled triples.
pub fn validate_pseudometric<T: Real>(metric: &InducedMetric<'_, T>, sample: Sample) -> MetricReport<T> {
    let n = metric.n();
    let tol = T::lit(METRIC_TOLERANCE);
    if n == 0 {
        return MetricReport {
            passed: true,
            worst_slack: T::zero(),
            witness: None,
            axiom_failure: None,
            triples_checked: 0,
        };
    }

    let (worst, axiom_failure, checked) = match sample {
        Sample::Exhaustive => {
            let table: Vec<Vec<T>> =
                (0..n).into_par_iter().map(|i| (0..n).map(|j| metric.distance(i, j)).collect()).collect();
            let axiom_failure = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| pair_axioms(table[i][j], table[j][i], i, j));
            let worst = (0..n)
                .into_par_iter()
                .map(|i| {
                    let row_i = &table[i];
                    let mut best: Worst<T> = (T::infinity(), (n, n, n));
                    for (k, row_k) in table.iter().enumerate() {
                        let d_ik = row_i[k];
                        for j in 0..n {
                            let slack = d_ik + row_k[j] - row_i[j];
                            if slack < best.0 {
                                best = (slack, (i, j, k));
                            }
                        }
                    }
                    best
                })
                .reduce(|| (T::infinity(), (n, n, n)), pick);
            (worst, axiom_failure, n * n * n)
        }
        Sample::Random { triples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks: Vec<(NodeId, NodeId, NodeId)> =
                (0..triples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let results: Vec<(Worst<T>, Option<String>)> = picks
                .par_iter()
                .map(|&(i, j, k)| {
                    let d_ij = metric.distance(i, j);
                    let d_ik = metric.distance(i, k);
                    let d_kj = metric.distance(k, j);
                    let axiom = pair_axioms(d_ij, metric.distance(j, i), i, j)
                        .or_else(|| pair_axioms(metric.distance(i, i), metric.distance(i, i), i, i));
                    ((d_ik + d_kj - d_ij, (i, j, k)), axiom)
                })
                .collect();
            let axiom_failure = results.iter().find_map(|(_, a)| a.clone());
            let worst =
                results.into_iter().map(|(w, _)| w).fold((T::infinity(), (n, n, n)), pick);
            (worst, axiom_failure, triples)
        }
    };

    let triangle_ok = !(worst.0 < -tol) && !worst.0.is_nan();
    let passed = triangle_ok && axiom_failure.is_none();
    MetricReport {
        passed,
        worst_slack: worst.0,
        witness: (!passed && worst.1 .0 < n).then_some(worst.1),
        axiom_failure,
        triples_checked: checked,
    }
}
