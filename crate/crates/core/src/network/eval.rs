use alloc::vec::Vec;

use super::{Network, Node, NodeId};

/// Reusable upward-pass evaluator. Holds per-node scratch so repeated
/// evaluations (exhaustive search, candidate scoring) do not allocate.
pub struct Evaluator<'a> {
    network: &'a Network,
    values: Vec<f64>,
    /// Generation stamps for sub-network evaluation.
    seen: Vec<u32>,
    generation: u32,
    stack: Vec<(NodeId, bool)>,
}

impl<'a> Evaluator<'a> {
    pub fn new(network: &'a Network) -> Self {
        let n = network.num_nodes();
        Evaluator {
            network,
            values: alloc::vec![f64::NEG_INFINITY; n],
            seen: alloc::vec![0; n],
            generation: 0,
            stack: Vec::new(),
        }
    }

    /// `ln S(x)` for a dense total assignment. No range checks.
    pub fn full(&mut self, x: &[usize]) -> f64 {
        let net = self.network;
        for &id in net.topological_order() {
            self.values[id] = node_value(net, id, &self.values, |var, logp| logp[x[var]]);
        }
        self.values[net.root()]
    }

    /// `ln S_node(x)` where `x` only needs to be set on the scope of `node`.
    /// Visits the sub-network below `node` and nothing else.
    pub fn below(&mut self, node: NodeId, x: &[usize]) -> f64 {
        let net = self.network;
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let generation = self.generation;
        self.stack.clear();
        self.stack.push((node, false));
        while let Some((id, expanded)) = self.stack.pop() {
            if expanded {
                self.values[id] = node_value(net, id, &self.values, |var, logp| logp[x[var]]);
                continue;
            }
            if self.seen[id] == generation {
                continue;
            }
            self.seen[id] = generation;
            self.stack.push((id, true));
            for &child in net.nodes()[id].children() {
                if self.seen[child] != generation {
                    self.stack.push((child, false));
                }
            }
        }
        self.values[node]
    }
}

/// `ln S(e)` with free leaves marginalized to one.
pub(crate) fn marginal(network: &Network, evidence: &[Option<usize>]) -> f64 {
    let mut values = alloc::vec![f64::NEG_INFINITY; network.num_nodes()];
    for &id in network.topological_order() {
        values[id] = node_value(network, id, &values, |var, logp| match evidence[var] {
            Some(v) => logp[v],
            None => 0.0,
        });
    }
    values[network.root()]
}

/// Value of one node given its children's values.
#[inline]
pub(crate) fn node_value<F>(network: &Network, id: NodeId, values: &[f64], leaf: F) -> f64
where
    F: Fn(usize, &[f64]) -> f64,
{
    let params = network.log_params(id);
    match &network.nodes()[id] {
        Node::Leaf { var, .. } => leaf(*var, params),
        Node::Product { children } => children.iter().map(|&c| values[c]).sum(),
        Node::Sum { children, .. } => weighted_log_sum(children, params, values),
    }
}

#[inline]
pub(crate) fn weighted_log_sum(children: &[NodeId], log_weights: &[f64], values: &[f64]) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for (&c, &lw) in children.iter().zip(log_weights) {
        max = max.max(lw + values[c]);
    }
    if max == f64::NEG_INFINITY {
        return max;
    }
    let mut acc = 0.0;
    for (&c, &lw) in children.iter().zip(log_weights) {
        acc += libm::exp(lw + values[c] - max);
    }
    max + libm::log(acc)
}
