//! Structural checks. Violations are collected, not raised: a parsed file can
//! be arbitrarily broken and the caller wants to see everything wrong with it.

use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use super::{Node, NodeId, RawNetwork, LEAF_TOLERANCE, WEIGHT_TOLERANCE};

#[derive(Clone, Debug, PartialEq)]
pub enum ViolationKind {
    RootMissing,
    DanglingChild { child: NodeId },
    NoChildren,
    WeightCount { children: usize, weights: usize },
    InvalidWeight { index: usize, weight: f64 },
    Unnormalized { total: f64 },
    CardinalityTooSmall { cardinality: usize },
    InvalidProbability { index: usize, probability: f64 },
    LeafUnnormalized { total: f64 },
    Cycle,
    Unreachable,
    CardinalityMismatch { var: usize, expected: usize, found: usize },
    VariableGap { var: usize },
    /// Sum children with differing scopes.
    Incomplete { child: NodeId },
    /// Product children with overlapping scopes.
    NotDecomposable { child: NodeId },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// `None` for network-wide violations.
    pub node: Option<NodeId>,
    pub kind: ViolationKind,
}

impl Violation {
    fn at(node: NodeId, kind: ViolationKind) -> Self {
        Violation { node: Some(node), kind }
    }

    /// Short property name, stable for scripting.
    pub fn property(&self) -> &'static str {
        use ViolationKind::*;
        match self.kind {
            RootMissing | DanglingChild { .. } | NoChildren | WeightCount { .. } => "structure",
            InvalidWeight { .. } | Unnormalized { .. } => "normalization",
            CardinalityTooSmall { .. }
            | InvalidProbability { .. }
            | LeafUnnormalized { .. }
            | CardinalityMismatch { .. }
            | VariableGap { .. } => "distribution",
            Cycle => "acyclicity",
            Unreachable => "reachability",
            Incomplete { .. } => "completeness",
            NotDecomposable { .. } => "decomposability",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ViolationKind::*;
        match self.node {
            Some(id) => write!(f, "node {id}: {}: ", self.property())?,
            None => write!(f, "network: {}: ", self.property())?,
        }
        match &self.kind {
            RootMissing => write!(f, "root node does not exist"),
            DanglingChild { child } => write!(f, "child {child} does not exist"),
            NoChildren => write!(f, "internal node without children"),
            WeightCount { children, weights } => {
                write!(f, "{children} children but {weights} weights")
            }
            InvalidWeight { index, weight } => write!(f, "weight #{index} is {weight}"),
            Unnormalized { total } => write!(f, "weights sum to {total}"),
            CardinalityTooSmall { cardinality } => {
                write!(f, "leaf has {cardinality} categories, need at least 2")
            }
            InvalidProbability { index, probability } => {
                write!(f, "probability #{index} is {probability}")
            }
            LeafUnnormalized { total } => write!(f, "leaf probabilities sum to {total}"),
            Cycle => write!(f, "lies on a directed cycle"),
            Unreachable => write!(f, "not reachable from the root"),
            CardinalityMismatch { var, expected, found } => write!(
                f,
                "variable {var} has {found} categories here, {expected} elsewhere"
            ),
            VariableGap { var } => write!(f, "variable {var} appears in no leaf"),
            Incomplete { child } => write!(f, "child {child} has a different scope"),
            NotDecomposable { child } => write!(f, "child {child} overlaps a sibling's scope"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(crate) struct Analysis {
    pub order: Vec<NodeId>,
    pub scopes: Vec<FixedBitSet>,
    pub cardinalities: Vec<usize>,
}

/// Checks acyclicity, reachability, completeness, decomposability and
/// normalization. An empty report means the network can be queried.
pub fn validate(raw: &RawNetwork) -> ValidationReport {
    analyze(raw).0
}

pub(crate) fn analyze(raw: &RawNetwork) -> (ValidationReport, Option<Analysis>) {
    let mut report = ValidationReport::default();
    let n = raw.nodes.len();
    if raw.root >= n {
        report.push(Violation { node: None, kind: ViolationKind::RootMissing });
        return (report, None);
    }

    let mut dangling = false;
    for (id, node) in raw.nodes.iter().enumerate() {
        check_local(id, node, n, &mut report, &mut dangling);
    }

    let (order, cyclic) = post_order(raw, &mut report);

    let mut reachable = alloc::vec![false; n];
    order.iter().for_each(|&id| reachable[id] = true);
    for id in (0..n).filter(|&id| !reachable[id]) {
        report.push(Violation::at(id, ViolationKind::Unreachable));
    }

    let cardinalities = collect_variables(raw, &order, &mut report);

    if dangling || cyclic {
        return (report, None);
    }

    let scopes = check_scopes(raw, &order, cardinalities.len(), &mut report);
    (report, Some(Analysis { order, scopes, cardinalities }))
}

fn check_local(id: NodeId, node: &Node, n: usize, report: &mut ValidationReport, dangling: &mut bool) {
    for &child in node.children() {
        if child >= n {
            *dangling = true;
            report.push(Violation::at(id, ViolationKind::DanglingChild { child }));
        }
    }
    match node {
        Node::Leaf { probs, .. } => {
            if probs.len() < 2 {
                report.push(Violation::at(id, ViolationKind::CardinalityTooSmall { cardinality: probs.len() }));
            }
            let bad = probs.iter().position(|p| !p.is_finite() || *p < 0.0);
            if let Some(index) = bad {
                report.push(Violation::at(
                    id,
                    ViolationKind::InvalidProbability { index, probability: probs[index] },
                ));
            } else {
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > LEAF_TOLERANCE {
                    report.push(Violation::at(id, ViolationKind::LeafUnnormalized { total }));
                }
            }
        }
        Node::Sum { children, weights } => {
            if children.is_empty() {
                report.push(Violation::at(id, ViolationKind::NoChildren));
            }
            if children.len() != weights.len() {
                report.push(Violation::at(
                    id,
                    ViolationKind::WeightCount { children: children.len(), weights: weights.len() },
                ));
            }
            let bad = weights.iter().position(|w| !w.is_finite() || *w < 0.0);
            if let Some(index) = bad {
                report.push(Violation::at(id, ViolationKind::InvalidWeight { index, weight: weights[index] }));
            } else if !weights.is_empty() {
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > WEIGHT_TOLERANCE {
                    report.push(Violation::at(id, ViolationKind::Unnormalized { total }));
                }
            }
        }
        Node::Product { children } => {
            if children.is_empty() {
                report.push(Violation::at(id, ViolationKind::NoChildren));
            }
        }
    }
}

/// Iterative DFS from the root. Returns the post-order of reachable nodes
/// and whether a cycle was found; cycles are reported at the node that
/// closes them.
fn post_order(raw: &RawNetwork, report: &mut ValidationReport) -> (Vec<NodeId>, bool) {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = raw.nodes.len();
    let mut mark = alloc::vec![Mark::New; n];
    let mut order = Vec::with_capacity(n);
    let mut cyclic = false;
    // (node, index of next child to visit)
    let mut stack: Vec<(NodeId, usize)> = alloc::vec![(raw.root, 0)];
    mark[raw.root] = Mark::Open;
    while let Some(top) = stack.last_mut() {
        let (id, next) = *top;
        let children = raw.nodes[id].children();
        if next < children.len() {
            top.1 += 1;
            let child = children[next];
            if child >= n {
                continue;
            }
            match mark[child] {
                Mark::New => {
                    mark[child] = Mark::Open;
                    stack.push((child, 0));
                }
                Mark::Open => {
                    cyclic = true;
                    let v = Violation::at(child, ViolationKind::Cycle);
                    if !report.violations.contains(&v) {
                        report.push(v);
                    }
                }
                Mark::Done => {}
            }
        } else {
            mark[id] = Mark::Done;
            order.push(id);
            stack.pop();
        }
    }
    (order, cyclic)
}

fn collect_variables(raw: &RawNetwork, order: &[NodeId], report: &mut ValidationReport) -> Vec<usize> {
    let mut cards: Vec<Option<usize>> = Vec::new();
    let mut ids = order.to_vec();
    ids.sort_unstable();
    for id in ids {
        if let Node::Leaf { var, probs } = &raw.nodes[id] {
            if *var >= cards.len() {
                cards.resize(var + 1, None);
            }
            match cards[*var] {
                None => cards[*var] = Some(probs.len()),
                Some(expected) if expected != probs.len() => report.push(Violation::at(
                    id,
                    ViolationKind::CardinalityMismatch { var: *var, expected, found: probs.len() },
                )),
                Some(_) => {}
            }
        }
    }
    cards
        .iter()
        .enumerate()
        .map(|(var, c)| {
            c.unwrap_or_else(|| {
                report.push(Violation { node: None, kind: ViolationKind::VariableGap { var } });
                0
            })
        })
        .collect()
}

fn check_scopes(
    raw: &RawNetwork,
    order: &[NodeId],
    num_vars: usize,
    report: &mut ValidationReport,
) -> Vec<FixedBitSet> {
    let mut scopes = alloc::vec![FixedBitSet::with_capacity(num_vars); raw.nodes.len()];
    for &id in order {
        let mut scope = FixedBitSet::with_capacity(num_vars);
        match &raw.nodes[id] {
            Node::Leaf { var, .. } => scope.insert(*var),
            Node::Sum { children, .. } => {
                if let Some(&first) = children.first() {
                    scope = scopes[first].clone();
                    for &child in &children[1..] {
                        if scopes[child] != scope {
                            report.push(Violation::at(id, ViolationKind::Incomplete { child }));
                            scope.union_with(&scopes[child]);
                        }
                    }
                }
            }
            Node::Product { children } => {
                for &child in children {
                    if !scope.is_disjoint(&scopes[child]) {
                        report.push(Violation::at(id, ViolationKind::NotDecomposable { child }));
                    }
                    scope.union_with(&scopes[child]);
                }
            }
        }
        scopes[id] = scope;
    }
    scopes
}
