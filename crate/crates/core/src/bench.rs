//! Seeded experiment runner and report emission.
//!
//! Every `(graph, config)` pair is partitioned `runs` times with seeds
//! `base_seed + run`. MCV indicators are taken after postprocessing, cut
//! indicators before it. Per graph, each config is compared against a
//! reference config through the quotients of minMCV, avgMCV and avgTime;
//! the quotients are summarized by their geometric mean over graphs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::io::parse_metis;
use crate::mcv::{edge_cut, mcv, mcv_postprocess};
use crate::multilevel::{partition_multilevel, Config};
use crate::{Error, Graph, Rating, Result};

/// One column of the config grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub label: String,
    pub partitioner: Config,
    pub postprocess: bool,
    pub mcv_rounds: usize,
}

impl RunConfig {
    /// Label `excond_<trees>`, `exalg` or `exp2`; other settings default.
    pub fn new(rating: Rating, trees: usize) -> Self {
        let mut partitioner = Config { rating, ..Config::default() };
        partitioner.rating_params.trees = trees;
        let label = match rating {
            Rating::ExCond => format!("excond_{trees}"),
            _ => rating.name().to_string(),
        };
        RunConfig { label, partitioner, postprocess: true, mcv_rounds: 20 }
    }
}

/// Outcome of a single seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub mcv_before: usize,
    pub mcv_after: usize,
    /// Edge cut before postprocessing.
    pub cut: f64,
    pub seconds: f64,
    pub blocks: Vec<u8>,
}

/// Partitions `g` once, then applies MCV postprocessing if enabled. The
/// time covers both phases.
pub fn run_once(g: &Graph, rc: &RunConfig, seed: u64) -> Result<RunRecord> {
    let eps = rc.partitioner.epsilon;
    let start = Instant::now();
    let p = partition_multilevel(g, &rc.partitioner, seed)?;
    let cut = edge_cut(g, &p);
    let mcv_before = mcv(g, &p);
    let p = if rc.postprocess { mcv_postprocess(g, p, rc.mcv_rounds, eps, seed)? } else { p };
    let seconds = start.elapsed().as_secs_f64();
    if !p.is_balanced(eps) {
        return Err(Error::Unbalanced {
            max_block: p.max_block_weight(),
            bound: crate::multilevel::balance_bound(g.total_vertex_weight(), eps),
        });
    }
    Ok(RunRecord { seed, mcv_before, mcv_after: mcv(g, &p), cut, seconds, blocks: p.into_blocks() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quotients {
    pub min_mcv: f64,
    pub avg_mcv: f64,
    pub avg_time: f64,
}

/// Indicators of one `(graph, config)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub graph: String,
    pub config: String,
    pub records: Vec<RunRecord>,
    pub min_mcv: usize,
    pub avg_mcv: f64,
    pub min_cut: f64,
    pub avg_cut: f64,
    pub avg_time: f64,
    /// Same indicators without postprocessing, for measuring its effect.
    pub avg_mcv_before: f64,
    pub quotients: Option<Quotients>,
}

impl Aggregate {
    pub fn from_records(graph: &str, config: &str, records: Vec<RunRecord>) -> Self {
        let k = records.len().max(1) as f64;
        Aggregate {
            graph: graph.to_string(),
            config: config.to_string(),
            min_mcv: records.iter().map(|r| r.mcv_after).min().unwrap_or(0),
            avg_mcv: records.iter().map(|r| r.mcv_after as f64).sum::<f64>() / k,
            min_cut: records.iter().map(|r| r.cut).fold(f64::INFINITY, f64::min),
            avg_cut: records.iter().map(|r| r.cut).sum::<f64>() / k,
            avg_time: records.iter().map(|r| r.seconds).sum::<f64>() / k,
            avg_mcv_before: records.iter().map(|r| r.mcv_before as f64).sum::<f64>() / k,
            quotients: None,
            records,
        }
    }

    /// Partition of the run with the smallest final MCV (earliest on ties).
    pub fn best_blocks(&self) -> Option<&[u8]> {
        self.records.iter().enumerate().min_by_key(|(i, r)| (r.mcv_after, *i)).map(|(_, r)| r.blocks.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub graph: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub reference: String,
    pub configs: Vec<String>,
    pub aggregates: Vec<Aggregate>,
    pub failures: Vec<Failure>,
}

impl Report {
    /// Geometric mean of each config's per-graph quotients.
    pub fn geometric_means(&self) -> Vec<(String, Quotients)> {
        self.configs
            .iter()
            .filter_map(|c| {
                let qs: Vec<Quotients> =
                    self.aggregates.iter().filter(|a| &a.config == c).filter_map(|a| a.quotients).collect();
                if qs.is_empty() {
                    return None;
                }
                let gm = |f: fn(&Quotients) -> f64| geometric_mean(&qs.iter().map(f).collect::<Vec<_>>());
                Some((
                    c.clone(),
                    Quotients { min_mcv: gm(|q| q.min_mcv), avg_mcv: gm(|q| q.avg_mcv), avg_time: gm(|q| q.avg_time) },
                ))
            })
            .collect()
    }
}

/// `exp(mean(ln x))`; 1 for an empty slice.
pub fn geometric_mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 1.0;
    }
    (values.iter().map(|x| x.ln()).sum::<f64>() / values.len() as f64).exp()
}

fn ratio(a: f64, b: f64) -> f64 {
    if a == b {
        1.0
    } else {
        a / b
    }
}

/// Runs every `(graph, config)` pair `runs` times. `reference` names the
/// config the quotients are relative to.
pub fn run_experiment(
    graphs: &[(String, Graph)],
    configs: &[RunConfig],
    runs: usize,
    base_seed: u64,
    reference: &str,
) -> Result<Report> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be positive".into()));
    }
    if !configs.iter().any(|c| c.label == reference) {
        return Err(Error::InvalidParameter(format!("reference config {reference:?} is not in the grid")));
    }
    let mut report = Report {
        reference: reference.to_string(),
        configs: configs.iter().map(|c| c.label.clone()).collect(),
        aggregates: Vec::new(),
        failures: Vec::new(),
    };
    for (name, g) in graphs {
        let jobs: Vec<(usize, u64)> = (0..configs.len()).flat_map(|c| (0..runs as u64).map(move |r| (c, r))).collect();
        let results: Vec<Result<RunRecord>> =
            jobs.par_iter().map(|&(c, r)| run_once(g, &configs[c], base_seed.wrapping_add(r))).collect();
        if let Some(Err(e)) = results.iter().find(|r| r.is_err()) {
            report.failures.push(Failure { graph: name.clone(), message: e.to_string() });
            continue;
        }
        let mut results = results.into_iter().map(|r| r.expect("checked above"));
        let mut per_graph: Vec<Aggregate> = configs
            .iter()
            .map(|c| Aggregate::from_records(name, &c.label, results.by_ref().take(runs).collect()))
            .collect();
        let reference_agg = per_graph.iter().find(|a| a.config == reference).expect("reference checked above").clone();
        for a in &mut per_graph {
            a.quotients = Some(Quotients {
                min_mcv: ratio(a.min_mcv as f64, reference_agg.min_mcv as f64),
                avg_mcv: ratio(a.avg_mcv, reference_agg.avg_mcv),
                avg_time: ratio(a.avg_time, reference_agg.avg_time),
            });
        }
        report.aggregates.extend(per_graph);
    }
    Ok(report)
}

/// Parses and checks each file, then runs the experiment. Files that fail
/// to load are reported as failures; the rest proceed.
pub fn run_experiment_files(
    paths: &[PathBuf],
    configs: &[RunConfig],
    runs: usize,
    base_seed: u64,
    reference: &str,
    largest_component: bool,
) -> Result<Report> {
    let mut graphs = Vec::new();
    let mut failures = Vec::new();
    for path in paths {
        let name = graph_name(path);
        match load_graph(path, largest_component) {
            Ok(g) => graphs.push((name, g)),
            Err(message) => failures.push(Failure { graph: name, message }),
        }
    }
    let mut report = run_experiment(&graphs, configs, runs, base_seed, reference)?;
    failures.extend(report.failures);
    report.failures = failures;
    Ok(report)
}

fn graph_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_graph(path: &Path, largest_component: bool) -> std::result::Result<Graph, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let g = parse_metis(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    if largest_component {
        return Ok(g.largest_component().0);
    }
    if !g.is_connected() {
        return Err(format!("{}: {}", path.display(), Error::Disconnected));
    }
    Ok(g)
}

pub const CSV_HEADER: [&str; 10] =
    ["graph", "config", "minMCV", "avgMCV", "minCut", "avgCut", "avgTime", "q_minMCV", "q_avgMCV", "q_avgTime"];

/// Label used in the graph column for geometric-mean rows.
pub const GEOMEAN_ROW: &str = "geomean";

fn fmt_quotients(q: Option<Quotients>, timing: bool) -> [String; 3] {
    match q {
        Some(q) => [
            format!("{:.4}", q.min_mcv),
            format!("{:.4}", q.avg_mcv),
            if timing { format!("{:.4}", q.avg_time) } else { "NA".into() },
        ],
        None => Default::default(),
    }
}

fn rows(report: &Report, timing: bool) -> Vec<[String; 10]> {
    let mut rows = Vec::new();
    for a in &report.aggregates {
        let [q0, q1, q2] = fmt_quotients(a.quotients, timing);
        rows.push([
            a.graph.clone(),
            a.config.clone(),
            a.min_mcv.to_string(),
            format!("{:.3}", a.avg_mcv),
            a.min_cut.to_string(),
            format!("{:.3}", a.avg_cut),
            if timing { format!("{:.6}", a.avg_time) } else { "NA".into() },
            q0,
            q1,
            q2,
        ]);
    }
    for (config, q) in report.geometric_means() {
        let [q0, q1, q2] = fmt_quotients(Some(q), timing);
        rows.push([
            GEOMEAN_ROW.into(),
            config,
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            q0,
            q1,
            q2,
        ]);
    }
    rows
}

/// CSV with one row per `(graph, config)` and one geometric-mean row per
/// config. With `timing` off, time columns hold `NA` so that the output
/// depends only on the seeds.
pub fn emit_csv(report: &Report, timing: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows(report, timing) {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
}

/// Fixed-width text rendering of the same rows, followed by failures.
pub fn emit_table(report: &Report, timing: bool) -> String {
    let all: Vec<[String; 10]> = std::iter::once(CSV_HEADER.map(String::from)).chain(rows(report, timing)).collect();
    let widths: Vec<usize> = (0..10).map(|i| all.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &all {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    let _ = writeln!(out, "reference: {}", report.reference);
    for f in &report.failures {
        let _ = writeln!(out, "FAILED {}: {}", f.graph, f.message);
    }
    out
}
