//! Graph-to-metric-space transformation.
//!
//! Each node is mapped to its row of `D(λ) + A`; the distance between two
//! nodes is a monotone function `φ` of a row similarity. With the cosine
//! kernel and `φ = arccos` the result is the angular distance between rows,
//! which is a pseudometric for every `λ ≥ 0`. Other combinations must pass
//! [`validate_pseudometric`] (or be explicitly overridden) before the
//! clustering code accepts them.

mod kernel;
mod lx;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::scalar::Real;

pub use kernel::{kernel_row, row_similarity, Kernel, KernelRow};
pub use lx::{LambdaPolicy, RowMatrix};
pub use validate::{validate_pseudometric, MetricReport, Sample, METRIC_TOLERANCE};

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("lambda must be a finite non-negative number, got {0}")]
    NegativeLambda(f64),
}

/// Function applied to a similarity `σ` to obtain a distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Phi {
    /// `arccos(σ)`, the angle between rows.
    #[default]
    Arccos,
    /// `1 − σ`.
    Identity,
    /// `sqrt(1 − σ)`, the chord length scaled by `1/√2`.
    Sqrt,
}

impl Phi {
    pub fn apply<T: Real>(self, sim: T) -> T {
        let s = sim.max(-T::one()).min(T::one());
        match self {
            Phi::Arccos => {
                if s >= T::one() {
                    T::zero()
                } else {
                    s.acos()
                }
            }
            Phi::Identity => T::one() - s,
            Phi::Sqrt => (T::one() - s).max(T::zero()).sqrt(),
        }
    }

    /// Distance assigned when the similarity is undefined: the largest
    /// value `φ` can take.
    pub fn undefined_distance<T: Real>(self) -> T {
        self.apply(-T::one())
    }
}

/// Full description of the induced distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricConfig<T> {
    pub kernel: Kernel,
    pub phi: Phi,
    pub policy: LambdaPolicy<T>,
}

impl<T: Real> Default for MetricConfig<T> {
    fn default() -> Self {
        Self { kernel: Kernel::Cosine, phi: Phi::Arccos, policy: LambdaPolicy::default() }
    }
}

impl<T: Real> MetricConfig<T> {
    /// Cosine + arccos is a pseudometric by construction.
    pub fn is_certified(&self) -> bool {
        self.kernel == Kernel::Cosine && self.phi == Phi::Arccos
    }

    pub fn build<'g>(&self, g: &'g Graph) -> Result<InducedMetric<'g, T>, MetricError> {
        let lx = RowMatrix::build(g, self.policy)?;
        Ok(InducedMetric::new(lx, self.kernel, self.phi))
    }
}

/// Whether a metric may be handed to the clustering code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// cosine + arccos
    Certified,
    /// passed [`validate_pseudometric`]
    Validated,
    /// the caller accepted an unvalidated configuration
    Overridden,
    Unvalidated,
}

/// Induced distance over the nodes of a graph. Distances are computed on
/// demand from O(1) per-node state; no distance matrix is stored.
#[derive(Debug, Clone)]
pub struct InducedMetric<'g, T> {
    lx: RowMatrix<'g, T>,
    kernel: Kernel,
    phi: Phi,
    rows: Vec<KernelRow<T>>,
    certification: Certification,
}

impl<'g, T: Real> InducedMetric<'g, T> {
    pub fn new(lx: RowMatrix<'g, T>, kernel: Kernel, phi: Phi) -> Self {
        let rows = (0..lx.n()).map(|v| kernel_row(&lx, v, kernel)).collect();
        let certification = if kernel == Kernel::Cosine && phi == Phi::Arccos {
            Certification::Certified
        } else {
            Certification::Unvalidated
        };
        Self { lx, kernel, phi, rows, certification }
    }

    pub fn n(&self) -> usize {
        self.lx.n()
    }

    pub fn graph(&self) -> &'g Graph {
        self.lx.graph()
    }

    pub fn lx(&self) -> &RowMatrix<'g, T> {
        &self.lx
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn phi(&self) -> Phi {
        self.phi
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn is_usable(&self) -> bool {
        self.certification != Certification::Unvalidated
    }

    /// Runs the validator and, when it passes, marks the metric as
    /// validated. The report is returned either way.
    pub fn certify(&mut self, sample: Sample) -> MetricReport<T> {
        let report = validate_pseudometric(self, sample);
        if report.passed && self.certification == Certification::Unvalidated {
            self.certification = Certification::Validated;
        }
        report
    }

    /// Accepts the configuration without validation.
    pub fn override_certification(&mut self) {
        if self.certification == Certification::Unvalidated {
            self.certification = Certification::Overridden;
        }
    }

    pub fn kernel_row(&self, v: NodeId) -> &KernelRow<T> {
        &self.rows[v]
    }

    /// Number of nodes whose transformed row vanishes.
    pub fn zero_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.is_zero()).count()
    }

    pub fn similarity(&self, u: NodeId, v: NodeId) -> Option<T> {
        kernel::similarity_of(&self.lx, u, &self.rows[u], v, &self.rows[v])
    }

    /// Distance plus a flag telling whether the similarity was undefined.
    pub fn distance_flagged(&self, u: NodeId, v: NodeId) -> (T, bool) {
        match self.similarity(u, v) {
            Some(s) => (self.phi.apply(s), false),
            None => (self.phi.undefined_distance(), true),
        }
    }

    pub fn distance(&self, u: NodeId, v: NodeId) -> T {
        self.distance_flagged(u, v).0
    }

    /// `e_v · z` for a dense vector `z` whose coordinate sum is `z_sum`.
    pub fn dot_dense(&self, v: NodeId, z: &[T], z_sum: T) -> T {
        let r = &self.rows[v];
        let nbr: T = self.graph().neighbors(v).iter().fold(T::zero(), |acc, &w| acc + z[w]);
        let mut out = r.diag * z[v] + r.edge * nbr;
        if r.offset != T::zero() {
            out = out + r.offset * z_sum;
        }
        out
    }

    /// Cosine between the unit-normalized row of `v` and a unit vector `z`.
    /// Vanishing rows have cosine 0 with everything.
    pub fn cos_to_center(&self, v: NodeId, z: &[T], z_sum: T) -> T {
        let r = &self.rows[v];
        if r.is_zero() {
            return T::zero();
        }
        let c = self.dot_dense(v, z, z_sum) / r.norm;
        c.max(-T::one()).min(T::one())
    }

    /// Adds the unit-normalized row of `v` into `(dense, offset)`, where the
    /// represented vector is `dense[k] + offset` on every coordinate `k`.
    pub fn accumulate_unit(&self, v: NodeId, dense: &mut [T], offset: &mut T) {
        let r = &self.rows[v];
        if r.is_zero() {
            return;
        }
        let inv = T::one() / r.norm;
        *offset = *offset + r.offset * inv;
        dense[v] = dense[v] + r.diag * inv;
        let e = r.edge * inv;
        for &w in self.graph().neighbors(v) {
            dense[w] = dense[w] + e;
        }
    }

    /// Dense unit-normalized transformed row of `v` (zero vector if it vanishes).
    pub fn unit_row(&self, v: NodeId) -> Vec<T> {
        let mut dense = vec![T::zero(); self.n()];
        let mut offset = T::zero();
        self.accumulate_unit(v, &mut dense, &mut offset);
        if offset != T::zero() {
            dense.iter_mut().for_each(|x| *x = *x + offset);
        }
        dense
    }
}

/// Distance between `i` and `j` under `cfg`; builds the required rows on
/// the fly. Returns the distance and the undefined-similarity flag.
pub fn distance<T: Real>(lx: &RowMatrix<'_, T>, i: NodeId, j: NodeId, cfg: &MetricConfig<T>) -> (T, bool) {
    match row_similarity(lx, i, j, cfg.kernel) {
        Some(s) => (cfg.phi.apply(s), false),
        None => (cfg.phi.undefined_distance(), true),
    }
}
