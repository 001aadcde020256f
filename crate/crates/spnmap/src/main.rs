use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use spnmap::format::{
    format_config, parse_assignment, parse_dimacs_cnf, parse_evidence, parse_graph, parse_spn, serialize_spn,
};
use spnmap::{run_mis_experiment, write_csv, ExperimentConfig};
use spnmap_core::map::DEFAULT_ENUMERATION_CAP;
use spnmap_core::reductions::{amplification_q, amplify, cnf_to_spn, mis_to_spn, ReductionResult};
use spnmap_core::{approx_factor_bound, exact_map_with_cap, LogProb, Network, Solver};

#[derive(Parser)]
#[command(name = "spnmap", version, about = "Inference and MAP queries on sum-product networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check structure, normalization, completeness and decomposability.
    Validate { file: PathBuf },
    /// Value of a full configuration.
    Eval {
        file: PathBuf,
        /// `1,0` or `0=1,1=0`.
        #[arg(long)]
        assignment: String,
    },
    /// Probability of partial evidence.
    Marginal {
        file: PathBuf,
        /// `index=value,...`; empty means no evidence.
        #[arg(long, default_value = "")]
        evidence: String,
    },
    /// Most probable configuration consistent with the evidence.
    Map {
        file: PathBuf,
        #[arg(long, value_parser = ["maxprod", "amap", "exact"])]
        algo: String,
        #[arg(long, default_value = "")]
        evidence: String,
        /// Largest number of configurations `exact` may enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
    /// Compile a problem instance into a network.
    Reduce {
        #[command(subcommand)]
        problem: Reduce,
    },
    /// Ratio experiments.
    Experiment {
        #[command(subcommand)]
        kind: Experiment,
    },
    /// Size, height and the approximation bound of max-product.
    Stats { file: PathBuf },
}

#[derive(Subcommand)]
enum Reduce {
    /// Maximum independent set: `graph n` / `edge u v` file.
    Mis {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 3-SAT from a DIMACS CNF file.
    Cnf {
        dimacs: PathBuf,
        /// Amplify with enough disjoint copies for a 2^(size^epsilon) gap.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// argmax-product / max-product on compiled random graphs.
    Mis {
        #[arg(long, value_delimiter = ',', default_values_t = [5, 10, 20])]
        vertices: Vec<usize>,
        #[arg(long = "edge-pct", value_delimiter = ',', default_values_t = [10.0, 20.0, 40.0, 60.0])]
        edge_pct: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the table here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Equally likely leaf categories: `lowest` index, or a per-instance
        /// `seeded` pick shared by both solvers.
        #[arg(long = "leaf-ties", default_value = "lowest", value_parser = ["lowest", "seeded"])]
        leaf_ties: String,
    },
}

/// Exit status 1: the input was understood but the query failed.
/// Exit status 2: the input could not be read or parsed.
enum Failure {
    Query(anyhow::Error),
    Input(anyhow::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)
}

fn load(path: &Path) -> Result<Network, Failure> {
    let raw = parse_spn(&read(path)?)
        .with_context(|| path.display().to_string())
        .map_err(Failure::Input)?;
    Network::try_from(raw).map_err(|report| Failure::Query(anyhow!("invalid network:\n{report}")))
}

fn input<T, E: Into<anyhow::Error>>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(e.into()))
}

fn query<T, E: Into<anyhow::Error>>(r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Query(e.into()))
}

fn value_line(v: LogProb) -> String {
    format!("value {} logvalue {}", v.linear(), v.ln())
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn reduction_document(r: &ReductionResult, header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    out + &serialize_spn(&r.network)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Validate { file } => {
            let raw = input(parse_spn(&read(&file)?))?;
            let report = raw.validate();
            if !report.is_empty() {
                return Err(Failure::Query(anyhow!("invalid network:\n{report}")));
            }
            writeln!(out, "valid: {} nodes", raw.nodes.len())?;
        }
        Command::Eval { file, assignment } => {
            let spn = load(&file)?;
            let x = input(parse_assignment(&assignment))?;
            writeln!(out, "{}", value_line(query(spn.evaluate(&x))?))?;
        }
        Command::Marginal { file, evidence } => {
            let spn = load(&file)?;
            let e = input(parse_evidence(&evidence))?;
            writeln!(out, "{}", value_line(query(spn.evaluate_marginal(&e))?))?;
        }
        Command::Map { file, algo, evidence, cap } => {
            let spn = load(&file)?;
            let e = input(parse_evidence(&evidence))?;
            let solver: Solver = input(algo.parse())?;
            let result = match solver {
                Solver::Exact => query(exact_map_with_cap(&spn, &e, cap))?,
                other => query(other.solve(&spn, &e))?,
            };
            writeln!(out, "{}", value_line(result.value))?;
            writeln!(out, "config {}", format_config(&result.configuration))?;
        }
        Command::Reduce { problem: Reduce::Mis { graph, output } } => {
            let g = input(parse_graph(&read(&graph)?))?;
            let r = query(mis_to_spn(&g))?;
            let header = format!(
                "independent set reduction of {} vertices, {} edges\n\
                 MAP value = (maximum independent set size) / {}",
                g.num_vertices(),
                g.num_edges(),
                r.normalizer().expect("independent-set certificate")
            );
            emit(&reduction_document(&r, &header), output.as_deref())?;
        }
        Command::Reduce { problem: Reduce::Cnf { dimacs, epsilon, output } } => {
            let f = input(parse_dimacs_cnf(&read(&dimacs)?))?;
            let base = query(cnf_to_spn(&f))?;
            let r = match epsilon {
                Some(eps) => {
                    let stats = base.network.stats();
                    let q = input(amplification_q(f.num_clauses(), stats.nodes + stats.arcs, eps))?;
                    log::info!("epsilon {eps}: {q} copies");
                    query(amplify(&base, q as usize))?
                }
                None => base,
            };
            let header = format!(
                "3-CNF reduction of {} variables, {} clauses, {} copies\n\
                 satisfiable iff MAP value >= {:e}\n\
                 unsatisfiable => MAP value <= {:e}",
                f.num_vars(),
                f.num_clauses(),
                r.copies,
                r.threshold().expect("satisfiability certificate").linear(),
                r.unsat_bound().expect("satisfiability certificate").linear()
            );
            emit(&reduction_document(&r, &header), output.as_deref())?;
        }
        Command::Experiment { kind: Experiment::Mis { vertices, edge_pct, reps, seed, csv, leaf_ties } } => {
            let config = ExperimentConfig {
                vertex_counts: vertices,
                edge_pcts: edge_pct,
                repetitions: reps,
                base_seed: seed,
                seeded_leaf_ties: leaf_ties == "seeded",
            };
            let rows = input(run_mis_experiment(&config))?;
            match csv {
                Some(path) => input(write_csv(&rows, fs::File::create(&path)?))?,
                None => input(write_csv(&rows, &mut out))?,
            }
        }
        Command::Stats { file } => {
            let spn = load(&file)?;
            let s = spn.stats();
            let bound = approx_factor_bound(&spn);
            writeln!(out, "nodes {}", s.nodes)?;
            writeln!(out, "sums {}", s.sums)?;
            writeln!(out, "products {}", s.products)?;
            writeln!(out, "leaves {}", s.leaves)?;
            writeln!(out, "arcs {}", s.arcs)?;
            writeln!(out, "height {}", s.height)?;
            writeln!(out, "variables {}", spn.num_vars())?;
            match spn.num_configurations() {
                Some(c) => writeln!(out, "configurations {c}")?,
                None => writeln!(out, "configurations overflow")?,
            }
            writeln!(out, "log2_degree_product {}", bound.log2_degree_product)?;
            writeln!(out, "size_exponent_bound {}", bound.exponent_bound)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Query(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
