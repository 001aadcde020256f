//! Network structure: nodes, the unchecked [`RawNetwork`] produced by
//! parsers and builders, and the validated, immutable [`Network`] that every
//! query runs against.

mod assignment;
pub(crate) mod eval;
mod validate;

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

pub use assignment::{Assignment, Evidence};
pub use eval::Evaluator;
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

use crate::error::QueryError;
use crate::prob::LogProb;

pub type NodeId = usize;

/// Weight sums off by at most this much are silently renormalized.
pub const WEIGHT_TOLERANCE: f64 = 1e-6;
/// Leaf distributions must sum to one within this tolerance.
pub const LEAF_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    /// Univariate categorical distribution, one probability per category.
    Leaf { var: usize, probs: Vec<f64> },
    /// Weighted mixture; `weights[j]` labels the arc to `children[j]`.
    Sum { children: Vec<NodeId>, weights: Vec<f64> },
    Product { children: Vec<NodeId> },
}

impl Node {
    pub fn children(&self) -> &[NodeId] {
        match self {
            Node::Leaf { .. } => &[],
            Node::Sum { children, .. } | Node::Product { children } => children,
        }
    }

    pub fn is_sum(&self) -> bool {
        matches!(self, Node::Sum { .. })
    }
}

/// A network as written down, before any structural checks.
///
/// Nodes are addressed by their index in `nodes`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawNetwork {
    pub nodes: Vec<Node>,
    pub root: NodeId,
}

impl RawNetwork {
    pub fn new(nodes: Vec<Node>, root: NodeId) -> Self {
        RawNetwork { nodes, root }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// Incremental constructor; ids are handed out in insertion order.
#[derive(Clone, Debug, Default)]
pub struct NetworkBuilder {
    nodes: Vec<Node>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        NetworkBuilder { nodes: Vec::with_capacity(n) }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaf(&mut self, var: usize, probs: Vec<f64>) -> NodeId {
        self.push(Node::Leaf { var, probs })
    }

    /// Binary leaf with `P(X = 1) = p_one`.
    pub fn bernoulli(&mut self, var: usize, p_one: f64) -> NodeId {
        self.leaf(var, alloc::vec![1.0 - p_one, p_one])
    }

    pub fn sum(&mut self, weighted: &[(NodeId, f64)]) -> NodeId {
        let (children, weights) = weighted.iter().copied().unzip();
        self.push(Node::Sum { children, weights })
    }

    pub fn product(&mut self, children: &[NodeId]) -> NodeId {
        self.push(Node::Product { children: children.to_vec() })
    }

    pub fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Overwrites a node, e.g. a placeholder pushed before its children.
    pub fn replace(&mut self, id: NodeId, node: Node) {
        self.nodes[id] = node;
    }

    pub fn into_raw(self, root: NodeId) -> RawNetwork {
        RawNetwork::new(self.nodes, root)
    }

    pub fn build(self, root: NodeId) -> Result<Network, ValidationReport> {
        Network::try_from(self.into_raw(root))
    }
}

/// A validated network: acyclic, every node reachable from the root,
/// complete, decomposable, normalized, with contiguous variable indices.
///
/// Immutable; all queries take `&self` and allocate their own scratch space,
/// so a network can be shared across threads.
#[derive(Clone, Debug)]
pub struct Network {
    nodes: Vec<Node>,
    root: NodeId,
    cardinalities: Vec<usize>,
    /// Children precede parents; the root is last.
    order: Vec<NodeId>,
    scopes: Vec<FixedBitSet>,
    /// Leaf: log probabilities. Sum: log weights. Product: empty.
    log_params: Vec<Vec<f64>>,
}

impl TryFrom<RawNetwork> for Network {
    type Error = ValidationReport;

    fn try_from(raw: RawNetwork) -> Result<Self, Self::Error> {
        let (report, analysis) = validate::analyze(&raw);
        if !report.is_empty() {
            return Err(report);
        }
        let analysis = analysis.expect("a clean report always carries an analysis");
        let nodes = raw.nodes;
        let log_params = nodes
            .iter()
            .map(|node| match node {
                Node::Leaf { probs: values, .. } | Node::Sum { weights: values, .. } => normalized_logs(values),
                Node::Product { .. } => Vec::new(),
            })
            .collect();
        Ok(Network {
            nodes,
            root: raw.root,
            cardinalities: analysis.cardinalities,
            order: analysis.order,
            scopes: analysis.scopes,
            log_params,
        })
    }
}

/// Logs of `values / sum(values)`. The stored node keeps the values as
/// given, so a network written out and read back is bit-identical.
fn normalized_logs(values: &[f64]) -> Vec<f64> {
    let total: f64 = values.iter().sum();
    let shift = if total > 0.0 && total != 1.0 { libm::log(total) } else { 0.0 };
    values.iter().map(|&v| ln_or_neg_inf(v) - shift).collect()
}

pub(crate) fn ln_or_neg_inf(x: f64) -> f64 {
    if x > 0.0 {
        libm::log(x)
    } else {
        f64::NEG_INFINITY
    }
}

/// Structural summary of a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkStats {
    pub nodes: usize,
    pub sums: usize,
    pub products: usize,
    pub leaves: usize,
    /// Arc count, with multiplicity.
    pub arcs: usize,
    /// Longest root-to-leaf path, counted in arcs.
    pub height: usize,
    /// Out-degree of each sum node, ordered by node id.
    pub sum_degrees: Vec<usize>,
}

impl Network {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_vars(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Result<&Node, QueryError> {
        self.nodes.get(id).ok_or(QueryError::UnknownNode(id))
    }

    pub fn cardinality(&self, var: usize) -> Option<usize> {
        self.cardinalities.get(var).copied()
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    /// Node ids with children before parents; the root comes last.
    pub fn topological_order(&self) -> &[NodeId] {
        &self.order
    }

    /// Variables in the scope of `id`, ascending.
    pub fn scope(&self, id: NodeId) -> Result<Vec<usize>, QueryError> {
        self.scopes
            .get(id)
            .map(|s| s.ones().collect())
            .ok_or(QueryError::UnknownNode(id))
    }


    pub(crate) fn log_params(&self, id: NodeId) -> &[f64] {
        &self.log_params[id]
    }

    /// Number of total configurations, or `None` if it overflows `u128`.
    pub fn num_configurations(&self) -> Option<u128> {
        self.cardinalities
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
    }

    pub fn to_raw(&self) -> RawNetwork {
        RawNetwork::new(self.nodes.clone(), self.root)
    }

    pub fn stats(&self) -> NetworkStats {
        let mut height = alloc::vec![0usize; self.nodes.len()];
        for &id in &self.order {
            height[id] = self.nodes[id]
                .children()
                .iter()
                .map(|&c| height[c] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut stats = NetworkStats {
            nodes: self.nodes.len(),
            sums: 0,
            products: 0,
            leaves: 0,
            arcs: 0,
            height: height[self.root],
            sum_degrees: Vec::new(),
        };
        for node in &self.nodes {
            stats.arcs += node.children().len();
            match node {
                Node::Leaf { .. } => stats.leaves += 1,
                Node::Product { .. } => stats.products += 1,
                Node::Sum { children, .. } => {
                    stats.sums += 1;
                    stats.sum_degrees.push(children.len());
                }
            }
        }
        stats
    }

    /// `S(x)` for a total assignment.
    pub fn evaluate(&self, x: &Assignment) -> Result<LogProb, QueryError> {
        x.check_against(self)?;
        Ok(LogProb::from_ln(Evaluator::new(self).full(x.values())))
    }

    /// `S(e)`: the probability of the evidence, summing out every free
    /// variable. Empty evidence yields one.
    pub fn evaluate_marginal(&self, e: &Evidence) -> Result<LogProb, QueryError> {
        let dense = e.to_dense(self)?;
        Ok(LogProb::from_ln(eval::marginal(self, &dense)))
    }
}
