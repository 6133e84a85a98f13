//! Community detection through an induced metric on graph nodes.
//!
//! A graph is mapped to a pseudometric space by comparing rows of
//! `D(λ) + A`, nodes are partitioned around farthest-first seeded centers,
//! and partitions are scored with the usual community quality measures.
//! The [`complexity`] module estimates how much community structure a graph
//! has in the first place.
//!
//! Numeric code is generic over the scalar type; the aliases below fix the
//! common choices.

pub mod baselines;
pub mod clustering;
pub mod communities;
pub mod complexity;
pub mod graph;
pub mod metric;
pub mod quality;
pub mod scalar;
pub mod seeds;

pub use communities::Communities;
pub use graph::{Graph, NodeId};
pub use scalar::{Real, Scalar};

/// Exact rational arithmetic for the counting measures.
pub type Exact = num_rational::Ratio<i64>;

pub type RowMatrix64<'g> = metric::RowMatrix<'g, f64>;
pub type MetricConfig64 = metric::MetricConfig<f64>;
pub type InducedMetric64<'g> = metric::InducedMetric<'g, f64>;
pub type Partition64 = clustering::Partition<f64>;
pub type ScoreCard64 = quality::ScoreCard<f64>;
pub type PartitionScores64 = quality::PartitionScores<f64>;

pub type MetricConfig32 = metric::MetricConfig<f32>;
pub type InducedMetric32<'g> = metric::InducedMetric<'g, f32>;
pub type Partition32 = clustering::Partition<f32>;
