use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use nmc_core::baselines::label_propagation;
use nmc_core::clustering::{partition_k, select_k, ClusterConfig, Criterion, Partition};
use nmc_core::complexity::{self, PathOptions};
use nmc_core::graph::{load_edge_list, DirectedPolicy};
use nmc_core::metric::{Kernel, LambdaPolicy, MetricConfig, Phi, Sample};
use nmc_core::quality::{score_partition, MedianScope, PartitionScores, MEASURE_NAMES};
use nmc_core::seeds::derive_seed;
use nmc_core::{Communities, Graph, InducedMetric64};

use crate::partition_file::{labelled_groups, parse_partition, partition_json};
use crate::report::*;
use crate::*;

/// Above this size the axiom check samples random triples.
const EXHAUSTIVE_VALIDATION_LIMIT: usize = 200;
const VALIDATION_TRIPLES: usize = 200_000;
const LABEL_PROP_ROUNDS: usize = 100;

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

fn load(args: &InputArgs) -> Result<(Graph, InputInfo), CliError> {
    let file = fs::File::open(&args.input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.input.display())))?;
    let policy = if args.strict_undirected { DirectedPolicy::Reject } else { DirectedPolicy::Symmetrize };
    let g = load_edge_list(BufReader::new(file), policy)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.input.display())))?;
    let info = InputInfo { path: args.input.display().to_string(), n: g.n(), m: g.m() };
    Ok((g, info))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--k-range expects A:B with 1 <= A <= B, got {text:?}"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn criterion(c: CriterionArg) -> Criterion {
    match c {
        CriterionArg::Modularity => Criterion::Modularity,
        CriterionArg::Conductance => Criterion::Conductance,
    }
}

fn criterion_name(c: CriterionArg) -> String {
    match c {
        CriterionArg::Modularity => "modularity",
        CriterionArg::Conductance => "conductance",
    }
    .to_string()
}

fn median(m: MedianArg) -> MedianScope {
    match m {
        MedianArg::Community => MedianScope::Community,
        MedianArg::Network => MedianScope::Network,
    }
}

fn metric_config(args: &MetricArgs) -> Result<(MetricConfig<f64>, &'static str, Option<f64>), CliError> {
    let kernel = match args.kernel {
        KernelArg::Cosine => Kernel::Cosine,
        KernelArg::Pearson => Kernel::Pearson,
        KernelArg::Spearman => Kernel::Spearman,
    };
    let phi = match args.phi {
        PhiArg::Arccos => Phi::Arccos,
        PhiArg::Identity => Phi::Identity,
        PhiArg::Sqrt => Phi::Sqrt,
    };
    let (policy, name, lambda) = match (args.lambda_policy, args.lambda) {
        (PolicyArg::Constant, l) => {
            let l = l.unwrap_or(2.0);
            (LambdaPolicy::Constant(l), "constant", Some(l))
        }
        (_, Some(_)) => return Err(CliError::Usage("--lambda only applies to --lambda-policy constant".into())),
        (PolicyArg::Degree, None) => (LambdaPolicy::Degree, "degree", None),
        (PolicyArg::MeanDegree, None) => (LambdaPolicy::MeanDegree, "mean-degree", None),
    };
    Ok((MetricConfig { kernel, phi, policy }, name, lambda))
}

struct BuiltMetric<'g> {
    metric: InducedMetric64<'g>,
    validation: Option<ValidationEcho>,
}

/// Builds the metric and enforces the certification rule: uncertified
/// configurations need the explicit flag, then get validated on a sample.
fn build_metric<'g>(g: &'g Graph, args: &MetricArgs, seed: u64) -> Result<BuiltMetric<'g>, CliError> {
    let (cfg, _, _) = metric_config(args)?;
    if !cfg.is_certified() && !args.allow_unvalidated_metric {
        return Err(CliError::Unvalidated { kernel: format!("{:?}", cfg.kernel), phi: format!("{:?}", cfg.phi) });
    }
    let mut metric = cfg.build(g).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut validation = None;
    if !cfg.is_certified() {
        let sample = if g.n() <= EXHAUSTIVE_VALIDATION_LIMIT {
            Sample::Exhaustive
        } else {
            Sample::Random { triples: VALIDATION_TRIPLES, seed: derive_seed(seed, "validate", 0) }
        };
        let report = metric.certify(sample);
        if !report.passed {
            metric.override_certification();
        }
        validation = Some(ValidationEcho::new(&report, metric.certification()));
    }
    Ok(BuiltMetric { metric, validation })
}

fn config_echo(
    args: &MetricArgs,
    k: Option<usize>,
    k_range: Option<[usize; 2]>,
    crit: Option<String>,
    restarts: usize,
    seed: u64,
) -> Result<ConfigEcho, CliError> {
    let (cfg, name, lambda) = metric_config(args)?;
    Ok(ConfigEcho {
        lambda_policy: name.to_string(),
        lambda,
        kernel: cfg.kernel,
        phi: cfg.phi,
        k,
        k_range,
        criterion: crit,
        restarts,
        seed,
    })
}

fn metrics_of(scores: PartitionScores<f64>) -> Metrics {
    Metrics { modularity: scores.modularity, mean_conductance: scores.mean_conductance, communities: scores.cards }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_else(|| "undefined".into())
}

fn csv_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn summary(g: &Graph, parts: &Communities, metrics: &Metrics) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nodes {}  edges {}  communities {}", g.n(), g.m(), parts.k());
    let _ = writeln!(out, "modularity        {}", fmt_opt(metrics.modularity));
    let _ = writeln!(out, "mean conductance  {}", fmt_opt(metrics.mean_conductance));
    let _ = writeln!(out, "{:>9} {:>8} {:>12} {:>12}", "community", "size", "conductance", "density");
    for (c, (card, size)) in metrics.communities.iter().zip(parts.sizes()).enumerate() {
        let _ = writeln!(
            out,
            "{:>9} {:>8} {:>12} {:>12.6}",
            c,
            size,
            fmt_opt(card.conductance),
            card.internal_density
        );
    }
    out
}

pub fn detect(a: &DetectArgs) -> Result<String, CliError> {
    let (k, range) = match (&a.k, &a.k_range) {
        (Some(k), None) => (*k, None),
        (None, Some(r)) => {
            let (lo, hi) = parse_range(r)?;
            (lo, Some((lo, hi)))
        }
        _ => return Err(CliError::Usage("give exactly one of --k and --k-range".into())),
    };
    if a.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    let config = config_echo(
        &a.metric,
        range.is_none().then_some(k),
        range.map(|(lo, hi)| [lo, hi]),
        Some(criterion_name(a.criterion)),
        a.seeds,
        a.seed,
    )?;

    let t = Instant::now();
    let (g, input) = load(&a.input)?;
    let load_ms = ms(t);
    let (lo, hi) = range.unwrap_or((k, k));
    if hi > g.n() {
        return Err(CliError::Usage(format!("k = {hi} exceeds the {} nodes of the graph", g.n())));
    }

    let t = Instant::now();
    let built = build_metric(&g, &a.metric, a.seed)?;
    let build_lx_ms = ms(t);

    let t = Instant::now();
    let base = ClusterConfig { max_iter: a.max_iter.max(1), ..ClusterConfig::new(lo, a.seed) };
    let (partition, selection): (Partition<f64>, Vec<SelectionDiagnostic>) = if range.is_none() && a.seeds == 1 {
        (partition_k(&built.metric, &base).context("partitioning")?, Vec::new())
    } else {
        let sel = select_k(&built.metric, lo..=hi, criterion(a.criterion), a.seeds, a.seed, &base)
            .context("k selection")?;
        let diags = sel.diagnostics.iter().map(SelectionDiagnostic::from).collect();
        (sel.best, diags)
    };
    let cluster_ms = ms(t);

    let t = Instant::now();
    let scores = score_partition::<f64>(&g, &partition.communities, median(a.median)).context("scoring")?;
    let score_ms = ms(t);
    let metrics = metrics_of(scores);

    let groups = labelled_groups(&g, &partition.communities);
    let text = summary(&g, &partition.communities, &metrics);
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        version: tool_version(),
        command: "detect".into(),
        input,
        config: Some(config),
        validation: built.validation,
        partition: PartitionEcho {
            communities: groups.clone(),
            cost: Some(partition.cost),
            iterations: Some(partition.iterations),
            converged: Some(partition.converged),
            repairs: partition.repairs.len(),
        },
        metrics,
        selection,
        timing: Timing { load_ms, build_lx_ms, cluster_ms, score_ms },
    };
    write_output(a.output.as_deref(), &to_json(&report))?;
    write_output(a.partition_out.as_deref(), &partition_json(&groups))?;
    Ok(text)
}

fn selected_measures(list: &str) -> Result<Vec<usize>, CliError> {
    if list.trim() == "all" {
        return Ok((0..MEASURE_NAMES.len()).collect());
    }
    let mut picked = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let idx = MEASURE_NAMES
            .iter()
            .position(|&m| m == name)
            .ok_or_else(|| CliError::Usage(format!("unknown measure {name:?}; known: {}", MEASURE_NAMES.join(", "))))?;
        picked.push(idx);
    }
    if picked.is_empty() {
        return Err(CliError::Usage("--measures selects nothing".into()));
    }
    // fixed column order regardless of how the list was written
    picked.sort_unstable();
    picked.dedup();
    Ok(picked)
}

pub fn evaluate(a: &EvaluateArgs) -> Result<String, CliError> {
    let columns = selected_measures(&a.measures)?;
    let t = Instant::now();
    let (g, input) = load(&a.input)?;
    let text = fs::read_to_string(&a.partition)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", a.partition.display())))?;
    let parts = parse_partition(&text, &g)?;
    let load_ms = ms(t);

    let t = Instant::now();
    let scores = score_partition::<f64>(&g, &parts, median(a.median)).context("scoring")?;
    let score_ms = ms(t);
    let metrics = metrics_of(scores);

    let mut csv = String::from("community,size");
    for &c in &columns {
        csv.push(',');
        csv.push_str(MEASURE_NAMES[c]);
    }
    csv.push('\n');
    for (c, (card, size)) in metrics.communities.iter().zip(parts.sizes()).enumerate() {
        let values = card.values();
        let _ = write!(csv, "{c},{size}");
        for &col in &columns {
            let _ = write!(csv, ",{}", csv_cell(values[col]));
        }
        csv.push('\n');
    }
    let _ = writeln!(csv, "# modularity,{}", csv_cell(metrics.modularity));
    let _ = writeln!(csv, "# mean_conductance,{}", csv_cell(metrics.mean_conductance));

    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        version: tool_version(),
        command: "evaluate".into(),
        input,
        config: None,
        validation: None,
        partition: PartitionEcho {
            communities: labelled_groups(&g, &parts),
            cost: None,
            iterations: None,
            converged: None,
            repairs: 0,
        },
        metrics,
        selection: Vec::new(),
        timing: Timing { load_ms, score_ms, ..Timing::default() },
    };
    write_output(a.output.as_deref(), &to_json(&report))?;
    Ok(csv)
}

pub fn dcc(a: &DccArgs) -> Result<String, CliError> {
    let (g, _) = load(&a.input)?;
    let opts = PathOptions { seed: a.seed, ..PathOptions::default() };
    let profile = complexity::dcc(&g, &opts).map_err(|e| CliError::Input(e.to_string()))?;
    let json = to_json(&profile);
    write_output(a.output.as_deref(), &json)?;
    Ok(json + "\n")
}

fn bench_row(g: &Graph, method: String, parts: &Communities, since: Instant) -> Result<BenchmarkRow, CliError> {
    let scores = score_partition::<f64>(g, parts, MedianScope::Community).context("scoring")?;
    Ok(BenchmarkRow {
        method,
        k: parts.k(),
        modularity: scores.modularity,
        mean_conductance: scores.mean_conductance,
        time_ms: ms(since),
    })
}

pub fn benchmark(a: &BenchmarkArgs) -> Result<String, CliError> {
    let (lo, hi) = parse_range(&a.k_range)?;
    if a.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    let config = config_echo(&a.metric, None, Some([lo, hi]), Some(criterion_name(a.criterion)), a.seeds, a.seed)?;
    let t = Instant::now();
    let (g, input) = load(&a.input)?;
    let load_ms = ms(t);
    if hi > g.n() {
        return Err(CliError::Usage(format!("k = {hi} exceeds the {} nodes of the graph", g.n())));
    }
    let imports = a
        .imports
        .iter()
        .map(|p| {
            let text =
                fs::read_to_string(p).map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?;
            let parts = parse_partition(&text, &g)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| p.display().to_string());
            Ok((name, parts))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut rows = Vec::new();
    let t = Instant::now();
    let built = build_metric(&g, &a.metric, a.seed)?;
    let build_lx_ms = ms(t);
    let t = Instant::now();
    let base = ClusterConfig { max_iter: a.max_iter.max(1), ..ClusterConfig::new(lo, a.seed) };
    let sel = select_k(&built.metric, lo..=hi, criterion(a.criterion), a.seeds, a.seed, &base).context("k selection")?;
    let cluster_ms = ms(t);
    rows.push(bench_row(&g, "metric-kcenter".into(), &sel.best.communities, t)?);

    for b in &a.baselines {
        match b {
            BaselineArg::LabelProp => {
                let t = Instant::now();
                let state = label_propagation(&g, derive_seed(a.seed, "label-prop", 0), LABEL_PROP_ROUNDS);
                rows.push(bench_row(&g, "label-prop".into(), &state.communities, t)?);
            }
        }
    }
    for (name, parts) in &imports {
        let t = Instant::now();
        rows.push(bench_row(&g, name.clone(), parts, t)?);
    }

    let mut csv = String::from("method,k,modularity,mean_conductance,time_ms\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{:.3}",
            r.method,
            r.k,
            csv_cell(r.modularity),
            csv_cell(r.mean_conductance),
            r.time_ms
        );
    }
    let report = BenchmarkReport {
        schema_version: SCHEMA_VERSION,
        version: tool_version(),
        input,
        config,
        validation: built.validation,
        rows,
        selection: sel.diagnostics.iter().map(SelectionDiagnostic::from).collect(),
        timing: Timing { load_ms, build_lx_ms, cluster_ms, score_ms: 0.0 },
    };
    write_output(a.output.as_deref(), &to_json(&report))?;
    write_output(a.csv.as_deref(), &csv)?;
    Ok(csv)
}
