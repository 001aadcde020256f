//! MAP (most probable explanation) solvers.
//!
//! * [`max_product`]: upward pass with sums replaced by weighted maxima,
//!   downward pass following the maximizing child of every sum node. Linear.
//! * [`argmax_product`]: bottom-up; each sum node scores every child's
//!   candidate configuration under the sum node itself and keeps the best.
//!   Quadratic in the worst case.
//! * [`exact_map`]: exhaustive enumeration of the free variables.
//!
//! Ties are always broken towards the lowest child index and the lowest
//! category, so results are reproducible.

mod argmax_product;
mod bound;
mod exact;
mod max_product;

use core::fmt;
use core::str::FromStr;

pub use argmax_product::{argmax_product, argmax_product_with};
pub use bound::{approx_factor_bound, ApproxBound, SIZE_EXPONENT};
pub use exact::{exact_map, exact_map_with_cap, DEFAULT_ENUMERATION_CAP};
pub use max_product::{max_product, max_product_with};

use crate::error::QueryError;
use crate::network::{Assignment, Evidence, Network};
use crate::prob::LogProb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solver {
    MaxProduct,
    ArgmaxProduct,
    Exact,
}

impl Solver {
    pub const ALL: [Solver; 3] = [Solver::MaxProduct, Solver::ArgmaxProduct, Solver::Exact];

    pub fn solve(self, network: &Network, e: &Evidence) -> Result<MapResult, QueryError> {
        match self {
            Solver::MaxProduct => max_product(network, e),
            Solver::ArgmaxProduct => argmax_product(network, e),
            Solver::Exact => exact_map(network, e),
        }
    }

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Solver::MaxProduct => "maxprod",
            Solver::ArgmaxProduct => "amap",
            Solver::Exact => "exact",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::MaxProduct => "max_product",
            Solver::ArgmaxProduct => "argmax_product",
            Solver::Exact => "exact",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown solver {0:?}; expected maxprod, amap or exact")]
pub struct UnknownSolver(pub alloc::string::String);

impl FromStr for Solver {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maxprod" | "max_product" => Ok(Solver::MaxProduct),
            "amap" | "argmax_product" => Ok(Solver::ArgmaxProduct),
            "exact" => Ok(Solver::Exact),
            other => Err(UnknownSolver(other.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapResult {
    pub configuration: Assignment,
    /// `S(configuration)`.
    pub value: LogProb,
    pub solver: Solver,
    /// Upward-pass value of max-product, a lower bound on `value`.
    pub pd_value: Option<LogProb>,
}

/// Whether `solver` finds a configuration consistent with `e` of probability
/// at least `gamma` (with `1e-9` relative slack). With [`Solver::Exact`]
/// this decides the MAP decision problem; the approximate solvers give a
/// sound "yes" only.
pub fn decision_map(
    network: &Network,
    e: &Evidence,
    gamma: LogProb,
    solver: Solver,
) -> Result<bool, QueryError> {
    if gamma.ln() > 1e-12 {
        return Err(QueryError::InvalidThreshold(gamma.ln()));
    }
    if gamma.is_zero() {
        // Still surface evidence errors.
        e.to_dense(network)?;
        return Ok(true);
    }
    let found = solver.solve(network, e)?;
    Ok(found.value.ln() >= gamma.ln() + libm::log1p(-1e-9))
}

/// How a leaf picks among equally probable categories.
///
/// The networks built by the reductions are full of uniform leaves, so on
/// them this choice decides which configuration an approximate solver
/// proposes for each product node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LeafTies {
    /// Lowest category index.
    #[default]
    Lowest,
    /// Uniformly among the tied categories, keyed on the seed and the leaf's
    /// node id. The same seed gives both approximate solvers the same picks.
    Seeded(u64),
}

/// Best category of a leaf (log-probabilities in `params`) and its value.
pub(crate) fn leaf_choice(params: &[f64], node: usize, ties: LeafTies) -> (usize, f64) {
    let (first, best) = max_product::argmax(params.iter().copied());
    match ties {
        LeafTies::Lowest => (first, best),
        LeafTies::Seeded(seed) => {
            let tied = params.iter().filter(|&&p| p == best).count();
            if tied < 2 {
                return (first, best);
            }
            let pick = (crate::experiments::mix(seed ^ crate::experiments::mix(node as u64)) % tied as u64) as usize;
            let index = params
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p == best)
                .nth(pick)
                .map(|(i, _)| i)
                .unwrap_or(first);
            (index, best)
        }
    }
}

/// Lowest consistent configuration: evidence values, zero elsewhere.
pub(crate) fn lowest_consistent(dense: &[Option<usize>]) -> Assignment {
    Assignment::new(dense.iter().map(|v| v.unwrap_or(0)).collect())
}
