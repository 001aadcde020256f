use alloc::vec::Vec;

use super::{leaf_choice, lowest_consistent, LeafTies, MapResult, Solver};
use crate::error::QueryError;
use crate::network::{eval, Assignment, Evaluator, Evidence, Network, Node};
use crate::prob::LogProb;

/// Max-product approximation.
///
/// Upward pass: leaves take their best consistent category, products
/// multiply, sums take `max_j w_j * pd(child_j)`. Downward pass: follow the
/// maximizing child at each sum, all children at each product. The
/// upward-pass value is returned as `pd_value`; it never exceeds the value
/// of the returned configuration.
pub fn max_product(network: &Network, e: &Evidence) -> Result<MapResult, QueryError> {
    max_product_with(network, e, LeafTies::Lowest)
}

/// [`max_product`] with a choice of leaf tie-breaking.
pub fn max_product_with(network: &Network, e: &Evidence, ties: LeafTies) -> Result<MapResult, QueryError> {
    let dense = e.to_dense(network)?;
    if eval::marginal(network, &dense) == f64::NEG_INFINITY {
        return Ok(MapResult {
            configuration: lowest_consistent(&dense),
            value: LogProb::ZERO,
            solver: Solver::MaxProduct,
            pd_value: Some(LogProb::ZERO),
        });
    }

    let n = network.num_nodes();
    let mut pd = alloc::vec![f64::NEG_INFINITY; n];
    // Leaves: chosen category. Sums: chosen child position.
    let mut choice = alloc::vec![0usize; n];
    for &id in network.topological_order() {
        let params = network.log_params(id);
        match &network.nodes()[id] {
            Node::Leaf { var, .. } => {
                let (best, value) = match dense[*var] {
                    Some(v) => (v, params[v]),
                    None => leaf_choice(params, id, ties),
                };
                choice[id] = best;
                pd[id] = value;
            }
            Node::Product { children } => {
                pd[id] = children.iter().map(|&c| pd[c]).sum();
            }
            Node::Sum { children, .. } => {
                let (best, value) = argmax(children.iter().zip(params).map(|(&c, &lw)| lw + pd[c]));
                choice[id] = best;
                pd[id] = value;
            }
        }
    }

    let mut config = alloc::vec![usize::MAX; network.num_vars()];
    descend(network, &choice, network.root(), &mut config, &mut Vec::new());
    debug_assert!(config.iter().all(|&v| v != usize::MAX));
    let value = Evaluator::new(network).full(&config);
    Ok(MapResult {
        configuration: Assignment::new(config),
        value: LogProb::from_ln(value),
        solver: Solver::MaxProduct,
        pd_value: Some(LogProb::from_ln(pd[network.root()])),
    })
}

/// First maximum wins.
pub(super) fn argmax<I: Iterator<Item = f64>>(values: I) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

/// Writes the configuration selected below `from` into `config`: leaves
/// contribute their chosen category, sums recurse into their chosen child,
/// products into all children. Only scope variables of `from` are touched.
pub(super) fn descend(
    network: &Network,
    choice: &[usize],
    from: usize,
    config: &mut [usize],
    stack: &mut Vec<usize>,
) {
    stack.clear();
    stack.push(from);
    while let Some(id) = stack.pop() {
        match &network.nodes()[id] {
            Node::Leaf { var, .. } => config[*var] = choice[id],
            Node::Product { children } => stack.extend_from_slice(children),
            Node::Sum { children, .. } => stack.push(children[choice[id]]),
        }
    }
}
