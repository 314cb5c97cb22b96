use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use excond::bench::{emit_csv, emit_table, run_experiment_files, RunConfig};
use excond::io::write_partition;
use excond::Rating;

/// Bipartitions graphs with a multilevel partitioner under a grid of edge
/// ratings and reports communication volume, edge cut and time.
#[derive(Debug, Parser)]
#[command(name = "excond", version)]
struct Args {
    /// Graph in METIS format. Repeat for several graphs.
    #[arg(long = "graph", value_name = "FILE", required = true)]
    graphs: Vec<PathBuf>,

    /// Edge rating. Repeat to compare several ratings.
    #[arg(long = "rating", value_name = "RATING", value_parser = ["excond", "exalg", "exp2"])]
    ratings: Vec<String>,

    /// Number of sampled spanning trees for excond. Repeat for several values.
    #[arg(long = "trees", value_name = "N")]
    trees: Vec<usize>,

    /// Allowed imbalance.
    #[arg(long, default_value_t = 0.03)]
    epsilon: f64,

    /// Seeded runs per graph and config.
    #[arg(long, default_value_t = 50)]
    runs: usize,

    /// Base seed; run i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Rounds of MCV postprocessing.
    #[arg(long, default_value_t = 20)]
    mcv_rounds: usize,

    /// Skip MCV postprocessing.
    #[arg(long)]
    no_postprocessing: bool,

    /// Stop coarsening at this many vertices.
    #[arg(long, default_value_t = 60)]
    coarsest_size: usize,

    /// Random vectors for the exalg rating's algebraic distance.
    #[arg(long, default_value_t = 8)]
    alg_vectors: usize,

    /// Smoothing iterations for the algebraic distance.
    #[arg(long, default_value_t = 10)]
    alg_iterations: usize,

    /// Relaxation weight of the algebraic-distance smoothing, in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    alg_relaxation: f64,

    /// Config label the quotients are relative to. Defaults to the first
    /// config of the grid.
    #[arg(long, value_name = "LABEL")]
    reference: Option<String>,

    /// Partition the largest connected component instead of rejecting
    /// disconnected graphs.
    #[arg(long)]
    largest_component: bool,

    /// Write the CSV report here.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Write the best partition here. With several graph/config pairs, one
    /// file per pair named PATH.<graph>.<config>.
    #[arg(long, value_name = "PATH")]
    partition_out: Option<PathBuf>,

    /// Print NA instead of times so that outputs depend only on the seeds.
    #[arg(long)]
    no_timing: bool,
}

fn config_grid(args: &Args) -> anyhow::Result<Vec<RunConfig>> {
    let ratings: Vec<Rating> = if args.ratings.is_empty() {
        vec![Rating::ExCond]
    } else {
        args.ratings.iter().map(|r| r.parse()).collect::<Result<_, _>>()?
    };
    let trees = if args.trees.is_empty() { vec![20] } else { args.trees.clone() };
    if trees.contains(&0) {
        bail!("--trees must be positive");
    }
    let mut grid: Vec<RunConfig> = Vec::new();
    for rating in ratings {
        let tree_counts = if rating == Rating::ExCond { &trees[..] } else { &trees[..1] };
        for &t in tree_counts {
            let mut rc = RunConfig::new(rating, t);
            if grid.iter().any(|c| c.label == rc.label) {
                continue;
            }
            rc.partitioner.epsilon = args.epsilon;
            rc.partitioner.coarsest_size = args.coarsest_size;
            let alg = &mut rc.partitioner.rating_params.algebraic;
            alg.vectors = args.alg_vectors;
            alg.iterations = args.alg_iterations;
            alg.relaxation = args.alg_relaxation;
            rc.postprocess = !args.no_postprocessing;
            rc.mcv_rounds = args.mcv_rounds;
            grid.push(rc);
        }
    }
    Ok(grid)
}

fn partition_path(base: &Path, graph: &str, config: &str, single: bool) -> PathBuf {
    if single {
        return base.to_path_buf();
    }
    let mut name = base.as_os_str().to_owned();
    name.push(format!(".{graph}.{config}"));
    PathBuf::from(name)
}

fn run(args: Args) -> anyhow::Result<bool> {
    if !(args.epsilon.is_finite() && args.epsilon >= 0.0) {
        bail!("--epsilon must be a finite non-negative number, got {}", args.epsilon);
    }
    if args.runs == 0 {
        bail!("--runs must be positive");
    }
    if args.coarsest_size < 2 {
        bail!("--coarsest-size must be at least 2");
    }
    if args.alg_vectors == 0 {
        bail!("--alg-vectors must be positive");
    }
    if !(args.alg_relaxation > 0.0 && args.alg_relaxation <= 1.0) {
        bail!("--alg-relaxation must lie in (0, 1], got {}", args.alg_relaxation);
    }
    let grid = config_grid(&args)?;
    let reference = args.reference.clone().unwrap_or_else(|| grid[0].label.clone());
    let report = run_experiment_files(&args.graphs, &grid, args.runs, args.seed, &reference, args.largest_component)?;

    let timing = !args.no_timing;
    print!("{}", emit_table(&report, timing));
    if let Some(path) = &args.output {
        std::fs::write(path, emit_csv(&report, timing)).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(base) = &args.partition_out {
        let single = report.aggregates.len() == 1;
        for a in &report.aggregates {
            if let Some(blocks) = a.best_blocks() {
                let path = partition_path(base, &a.graph, &a.config, single);
                std::fs::write(&path, write_partition(blocks))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    for f in &report.failures {
        eprintln!("error: {}: {}", f.graph, f.message);
    }
    Ok(report.failures.is_empty())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
