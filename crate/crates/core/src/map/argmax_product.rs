use alloc::vec::Vec;

use super::max_product::descend;
use super::{leaf_choice, lowest_consistent, LeafTies, MapResult, Solver};
use crate::error::QueryError;
use crate::network::{eval, Assignment, Evaluator, Evidence, Network, Node};
use crate::prob::LogProb;

/// Argmax-product approximation.
///
/// Runs bottom-up. A leaf proposes its best consistent category; a product
/// proposes the concatenation of its children's proposals; a sum node
/// evaluates each child's proposal under the sum node itself,
/// `sum_j w_j S_j(x^k)`, and keeps the best one.
///
/// Proposals are stored as one choice per node (category for leaves, child
/// position for sums), so a node shared by several parents contributes the
/// same proposal to all of them.
pub fn argmax_product(network: &Network, e: &Evidence) -> Result<MapResult, QueryError> {
    argmax_product_with(network, e, LeafTies::Lowest)
}

/// [`argmax_product`] with a choice of leaf tie-breaking.
pub fn argmax_product_with(network: &Network, e: &Evidence, ties: LeafTies) -> Result<MapResult, QueryError> {
    let dense = e.to_dense(network)?;
    if eval::marginal(network, &dense) == f64::NEG_INFINITY {
        return Ok(MapResult {
            configuration: lowest_consistent(&dense),
            value: LogProb::ZERO,
            solver: Solver::ArgmaxProduct,
            pd_value: None,
        });
    }

    let mut choice = alloc::vec![0usize; network.num_nodes()];
    let mut scratch = alloc::vec![0usize; network.num_vars()];
    let mut stack = Vec::new();
    let mut evaluator = Evaluator::new(network);

    for &id in network.topological_order() {
        match &network.nodes()[id] {
            Node::Leaf { var, .. } => {
                choice[id] = match dense[*var] {
                    Some(v) => v,
                    None => leaf_choice(network.log_params(id), id, ties).0,
                };
            }
            Node::Product { .. } => {}
            Node::Sum { children, .. } => {
                let mut best = (0, f64::NEG_INFINITY);
                for (k, &child) in children.iter().enumerate() {
                    descend(network, &choice, child, &mut scratch, &mut stack);
                    let score = evaluator.below(id, &scratch);
                    if score > best.1 {
                        best = (k, score);
                    }
                }
                choice[id] = best.0;
            }
        }
    }

    let mut config = alloc::vec![usize::MAX; network.num_vars()];
    descend(network, &choice, network.root(), &mut config, &mut stack);
    debug_assert!(config.iter().all(|&v| v != usize::MAX));
    let value = evaluator.full(&config);
    Ok(MapResult {
        configuration: Assignment::new(config),
        value: LogProb::from_ln(value),
        solver: Solver::ArgmaxProduct,
        pd_value: None,
    })
}
