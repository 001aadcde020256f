//! Compilers from combinatorial decision problems to networks whose MAP
//! value encodes the answer, plus disjoint-copy amplification.

mod cnf;
mod graph;
mod mis;
mod sat;

use alloc::vec::Vec;

use num_bigint::BigUint;

pub use cnf::{Clause, CnfFormula, Literal};
pub use graph::Graph;
pub use mis::{mis_decision_threshold, mis_to_spn};
pub use sat::cnf_to_spn;

use crate::error::ReductionError;
use crate::network::{Network, NetworkBuilder, Node};
use crate::prob::LogProb;

/// What the MAP value of a reduction network certifies.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// MAP value of one copy is `alpha / normalizer`, `alpha` the
    /// independence number.
    IndependentSet { normalizer: BigUint },
    /// One copy reaches `threshold` iff satisfiable and stays at or below
    /// `(clauses - 1) / clauses * threshold` otherwise.
    Satisfiability { clauses: usize, threshold: LogProb },
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub network: Network,
    pub certificate: Certificate,
    /// Number of disjoint copies under the root (1 before amplification).
    pub copies: usize,
    /// Variables per copy.
    pub base_variables: usize,
}

impl ReductionResult {
    pub fn normalizer(&self) -> Option<&BigUint> {
        match &self.certificate {
            Certificate::IndependentSet { normalizer } => Some(normalizer),
            Certificate::Satisfiability { .. } => None,
        }
    }

    /// Satisfiability threshold over all copies, `(2^(3-n) / 7)^q`.
    pub fn threshold(&self) -> Option<LogProb> {
        match self.certificate {
            Certificate::Satisfiability { threshold, .. } => Some(threshold.powi(self.copies as u32)),
            Certificate::IndependentSet { .. } => None,
        }
    }

    /// Upper bound on the MAP value of an unsatisfiable formula,
    /// `((m - 1) / m * 2^(3-n) / 7)^q`.
    pub fn unsat_bound(&self) -> Option<LogProb> {
        match self.certificate {
            Certificate::Satisfiability { clauses, threshold } => {
                let shrink = LogProb::from_linear((clauses as f64 - 1.0) / clauses as f64);
                Some((threshold * shrink).powi(self.copies as u32))
            }
            Certificate::IndependentSet { .. } => None,
        }
    }
}

/// Product of `q` disjoint copies of `result`'s network, see
/// [`disjoint_copies`]. The certificate carries over with `copies`
/// multiplied by `q`; `q = 1` returns the input unchanged.
pub fn amplify(result: &ReductionResult, q: usize) -> Result<ReductionResult, ReductionError> {
    if q == 1 {
        return Ok(result.clone());
    }
    Ok(ReductionResult {
        network: disjoint_copies(&result.network, q)?,
        certificate: result.certificate.clone(),
        copies: result.copies * q,
        base_variables: result.base_variables,
    })
}

/// Product node over `q` copies of `network` on disjoint variables. Copy `t`
/// maps variable `k` to `t * n + k`; node ids are the new root (0) followed
/// by each copy's nodes in their original order. Its value on a
/// configuration is the product of the copies' values on their blocks.
pub fn disjoint_copies(network: &Network, q: usize) -> Result<Network, ReductionError> {
    if q == 0 {
        return Err(ReductionError::InvalidCopies(q));
    }
    let size = network.num_nodes();
    let vars = network.num_vars();
    let mut b = NetworkBuilder::with_capacity(q * size + 1);
    let root = b.push(Node::Product { children: Vec::new() });
    let mut copy_roots = Vec::with_capacity(q);
    for t in 0..q {
        let offset = 1 + t * size;
        let shift = |ids: &[usize]| ids.iter().map(|&c| c + offset).collect::<Vec<_>>();
        for node in network.nodes() {
            b.push(match node {
                Node::Leaf { var, probs } => Node::Leaf { var: t * vars + var, probs: probs.clone() },
                Node::Sum { children, weights } => Node::Sum {
                    children: shift(children),
                    weights: weights.clone(),
                },
                Node::Product { children } => Node::Product { children: shift(children) },
            });
        }
        copy_roots.push(offset + network.root());
    }
    b.replace(root, Node::Product { children: copy_roots });
    Ok(Network::try_from(b.into_raw(root)).expect("disjoint copies of a valid network are valid"))
}

/// Number of copies that pushes the satisfiable/unsatisfiable gap past
/// `2^(s^epsilon)`: `q = 1 + floor((ln 2 * m * (s' + 2)^epsilon)^(1 / (1 - epsilon)))`,
/// where `s'` is the size of one copy.
pub fn amplification_q(m: usize, s_prime: usize, epsilon: f64) -> Result<u64, ReductionError> {
    if m == 0 {
        return Err(ReductionError::InvalidAmplification("clause count must be at least 1"));
    }
    if s_prime == 0 {
        return Err(ReductionError::InvalidAmplification("copy size must be at least 1"));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(ReductionError::InvalidAmplification("epsilon must lie in [0, 1)"));
    }
    let base = core::f64::consts::LN_2 * m as f64 * libm::pow(s_prime as f64 + 2.0, epsilon);
    let raised = libm::pow(base, 1.0 / (1.0 - epsilon));
    if !raised.is_finite() || raised >= (1u64 << 53) as f64 {
        return Err(ReductionError::InvalidAmplification("copy count overflows"));
    }
    Ok(1 + libm::floor(raised) as u64)
}
