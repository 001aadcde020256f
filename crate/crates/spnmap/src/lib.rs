//! Text formats, the ratio experiment and the `spnmap` command line on top
//! of [`spnmap_core`].

pub mod experiment;
pub mod format;

pub use experiment::{run_mis_experiment, write_csv, ExperimentConfig, ExperimentRow};
pub use format::{
    format_config, parse_assignment, parse_dimacs_cnf, parse_evidence, parse_graph, parse_spn, serialize_spn,
    ParseError,
};
