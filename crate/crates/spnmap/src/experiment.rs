//! The independent-set ratio study: random graphs are compiled into
//! networks and argmax-product is compared with max-product on each.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use spnmap_core::experiments::{derive_seed, random_graph, ratio_of};
use spnmap_core::reductions::mis_to_spn;
use spnmap_core::{argmax_product_with, max_product_with, Evidence, LeafTies};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub vertex_counts: Vec<usize>,
    /// Percentages of the `n (n - 1) / 2` possible edges, in `(0, 100]`.
    pub edge_pcts: Vec<f64>,
    pub repetitions: usize,
    pub base_seed: u64,
    /// Break ties between equally likely leaf categories with the
    /// repetition's seed instead of taking the lowest category. Under the
    /// lowest-category rule every uniform leaf proposes 0, and both solvers
    /// end at `1/c` on every graph.
    pub seeded_leaf_ties: bool,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("vertex count {0} is below 2")]
    TooFewVertices(usize),
    #[error("edge percentage {0} is outside (0, 100]")]
    EdgePercentage(f64),
    #[error("at least one repetition is required")]
    NoRepetitions,
}

impl ExperimentConfig {
    pub fn check(&self) -> Result<(), ConfigError> {
        if let Some(&n) = self.vertex_counts.iter().find(|&&n| n < 2) {
            return Err(ConfigError::TooFewVertices(n));
        }
        if let Some(&p) = self.edge_pcts.iter().find(|&&p| !(p > 0.0 && p <= 100.0)) {
            return Err(ConfigError::EdgePercentage(p));
        }
        if self.repetitions == 0 {
            return Err(ConfigError::NoRepetitions);
        }
        Ok(())
    }
}

/// Summary of one (vertices, edge percentage) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub vertices: usize,
    pub edge_pct: f64,
    /// Nodes in each compiled network, `n^2 + n + 1`.
    pub nodes: usize,
    pub mean_ratio: f64,
    /// Sample standard deviation (0 for a single repetition).
    pub stddev_ratio: f64,
    /// Per-repetition ratios, by repetition index.
    pub ratios: Vec<f64>,
    pub mean_time_max_product: Duration,
    pub mean_time_argmax_product: Duration,
}

struct Repetition {
    nodes: usize,
    ratio: f64,
    max_product: Duration,
    argmax_product: Duration,
}

fn repetition(vertices: usize, edge_pct: f64, seed: u64, seeded_ties: bool) -> Repetition {
    let g = random_graph(vertices, edge_pct, seed);
    let spn = mis_to_spn(&g).expect("generated graphs are non-empty").network;
    let e = Evidence::new();
    let ties = if seeded_ties { LeafTies::Seeded(seed) } else { LeafTies::Lowest };

    let start = Instant::now();
    let mp = max_product_with(&spn, &e, ties).expect("empty evidence");
    let max_product = start.elapsed();
    let start = Instant::now();
    let amap = argmax_product_with(&spn, &e, ties).expect("empty evidence");
    let argmax_product = start.elapsed();

    Repetition {
        nodes: spn.num_nodes(),
        ratio: ratio_of(amap.value, mp.value),
        max_product,
        argmax_product,
    }
}

/// Runs every cell, vertex counts outermost. Repetitions run in parallel;
/// each has its own seed, so the output does not depend on scheduling.
pub fn run_mis_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>, ConfigError> {
    config.check()?;
    let mut rows = Vec::new();
    for &vertices in &config.vertex_counts {
        for &edge_pct in &config.edge_pcts {
            let reps: Vec<Repetition> = (0..config.repetitions)
                .into_par_iter()
                .map(|r| {
                    let seed = derive_seed(config.base_seed, vertices, edge_pct, r);
                    repetition(vertices, edge_pct, seed, config.seeded_leaf_ties)
                })
                .collect();
            let ratios: Vec<f64> = reps.iter().map(|r| r.ratio).collect();
            let (mean_ratio, stddev_ratio) = mean_and_sample_stddev(&ratios);
            let k = reps.len() as u32;
            let row = ExperimentRow {
                vertices,
                edge_pct,
                nodes: reps[0].nodes,
                mean_ratio,
                stddev_ratio,
                ratios,
                mean_time_max_product: reps.iter().map(|r| r.max_product).sum::<Duration>() / k,
                mean_time_argmax_product: reps.iter().map(|r| r.argmax_product).sum::<Duration>() / k,
            };
            log::info!(
                "n={} pct={} nodes={} ratio={:.4}±{:.4} maxprod={:?} amap={:?}",
                row.vertices,
                row.edge_pct,
                row.nodes,
                row.mean_ratio,
                row.stddev_ratio,
                row.mean_time_max_product,
                row.mean_time_argmax_product
            );
            rows.push(row);
        }
    }
    Ok(rows)
}

fn mean_and_sample_stddev(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// `vertices,edge_pct,nodes,mean_ratio,stddev_ratio`, one line per row.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["vertices", "edge_pct", "nodes", "mean_ratio", "stddev_ratio"])?;
    for row in rows {
        w.write_record([
            row.vertices.to_string(),
            row.edge_pct.to_string(),
            row.nodes.to_string(),
            row.mean_ratio.to_string(),
            row.stddev_ratio.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
