//! Sum-product networks over categorical variables: exact evaluation and
//! marginals, three MAP solvers (max-product, argmax-product and exhaustive
//! search), and compilers that turn maximum-independent-set and 3-CNF
//! instances into networks whose MAP value encodes the answer.
//!
//! All propagation happens in log space ([`LogProb`]). The crate is
//! `no_std` and only needs `alloc`; file formats, timing and the command
//! line live in the `spnmap` crate.
//!
//! ```
//! use spnmap_core::{NetworkBuilder, Evidence, max_product, argmax_product};
//!
//! let mut b = NetworkBuilder::new();
//! let one = b.bernoulli(0, 1.0);
//! let zeros: Vec<_> = (0..3).map(|_| b.bernoulli(0, 0.0)).collect();
//! let root = b.sum(&[(one, 5.0 / 16.0), (zeros[0], 11.0 / 48.0),
//!                    (zeros[1], 11.0 / 48.0), (zeros[2], 11.0 / 48.0)]);
//! let spn = b.build(root).unwrap();
//!
//! let mp = max_product(&spn, &Evidence::new()).unwrap();
//! let am = argmax_product(&spn, &Evidence::new()).unwrap();
//! assert!((am.value / mp.value - 2.2).abs() < 1e-12);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod experiments;
pub mod map;
pub mod network;
pub mod prob;
pub mod reductions;

pub use error::{QueryError, ReductionError};
pub use map::{
    approx_factor_bound, argmax_product, argmax_product_with, decision_map, exact_map, exact_map_with_cap,
    max_product, max_product_with, ApproxBound, LeafTies, MapResult, Solver,
};
pub use network::{
    validate, Assignment, Evidence, Network, NetworkBuilder, NetworkStats, Node, NodeId, RawNetwork,
    ValidationReport, Violation, ViolationKind,
};
pub use prob::LogProb;
