//! JSON documents written by the subcommands.

use nmc_core::clustering::KDiagnostic;
use nmc_core::metric::{Certification, Kernel, MetricReport, Phi};
use nmc_core::quality::ScoreCard;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> String {
    format!("nmc {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub lambda_policy: String,
    pub lambda: Option<f64>,
    pub kernel: Kernel,
    pub phi: Phi,
    pub k: Option<usize>,
    pub k_range: Option<[usize; 2]>,
    pub criterion: Option<String>,
    pub restarts: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationEcho {
    pub certification: Certification,
    pub passed: bool,
    pub worst_slack: f64,
    pub witness: Option<[usize; 3]>,
    pub axiom_failure: Option<String>,
    pub triples_checked: usize,
}

impl ValidationEcho {
    pub fn new(report: &MetricReport<f64>, certification: Certification) -> Self {
        Self {
            certification,
            passed: report.passed,
            worst_slack: report.worst_slack,
            witness: report.witness.map(|(i, j, k)| [i, j, k]),
            axiom_failure: report.axiom_failure.clone(),
            triples_checked: report.triples_checked,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionEcho {
    /// Members by original node label.
    pub communities: Vec<Vec<String>>,
    pub cost: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
    pub repairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub modularity: Option<f64>,
    pub mean_conductance: Option<f64>,
    pub communities: Vec<ScoreCard<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionDiagnostic {
    pub k: usize,
    pub score: Option<f64>,
    pub cost: f64,
    pub restart: usize,
    pub seed: u64,
    pub iterations: usize,
    pub intra_similarity: Option<f64>,
}

impl From<&KDiagnostic<f64>> for SelectionDiagnostic {
    fn from(d: &KDiagnostic<f64>) -> Self {
        Self {
            k: d.k,
            score: d.score,
            cost: d.cost,
            restart: d.restart,
            seed: d.seed,
            iterations: d.iterations,
            intra_similarity: d.intra_similarity,
        }
    }
}

/// Wall-clock milliseconds per phase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub load_ms: f64,
    pub build_lx_ms: f64,
    pub cluster_ms: f64,
    pub score_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub input: InputInfo,
    pub config: Option<ConfigEcho>,
    pub validation: Option<ValidationEcho>,
    pub partition: PartitionEcho,
    pub metrics: Metrics,
    pub selection: Vec<SelectionDiagnostic>,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub method: String,
    pub k: usize,
    pub modularity: Option<f64>,
    pub mean_conductance: Option<f64>,
    pub time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub schema_version: u32,
    pub version: String,
    pub input: InputInfo,
    pub config: ConfigEcho,
    pub validation: Option<ValidationEcho>,
    pub rows: Vec<BenchmarkRow>,
    pub selection: Vec<SelectionDiagnostic>,
    pub timing: Timing,
}
