use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{Certificate, Graph, ReductionResult};
use crate::error::ReductionError;
use crate::network::{Network, NetworkBuilder, Node};
use crate::prob::LogProb;

/// Height-2 tree whose MAP value is `(maximum independent set size) / c`.
///
/// One product per vertex `i` over all `n` variables: `X_i` is forced to 1,
/// neighbours of `i` are forced to 0, everything else is uniform. So
/// `S_i(x) = 2^-(n - n_i - 1)` exactly when `x_i = 1` and no neighbour is
/// set. The root mixes the products with weights `2^(n - n_i - 1) / c`,
/// `c = sum_i 2^(n - n_i - 1)`, which makes every supporting vertex
/// contribute exactly `1/c`.
///
/// Node ids: root 0, then each vertex's product followed by its `n` leaves.
pub fn mis_to_spn(g: &Graph) -> Result<ReductionResult, ReductionError> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(ReductionError::EmptyGraph);
    }
    let adjacency = g.adjacency();
    let exponents: Vec<usize> = adjacency.iter().map(|nb| n - nb.len() - 1).collect();

    let normalizer = exponents
        .iter()
        .fold(BigUint::default(), |acc, &k| acc + (BigUint::from(1u32) << k));
    // Scale by the largest power so no term overflows; every term is a power
    // of two, so the sum is exact for n <= 53.
    let top = *exponents.iter().max().expect("n >= 1");
    let scaled = |k: usize| libm::exp2(k as f64 - top as f64);
    let denominator: f64 = exponents.iter().map(|&k| scaled(k)).sum();

    // Parents are pushed before their children so ids follow a pre-order.
    let mut b = NetworkBuilder::with_capacity(n * n + n + 1);
    let root = b.push(Node::Sum { children: Vec::new(), weights: Vec::new() });
    let mut weighted = Vec::with_capacity(n);
    for (i, neighbours) in adjacency.iter().enumerate() {
        let product = b.product(&[]);
        let leaves = (0..n)
            .map(|j| {
                let p_one = if j == i {
                    1.0
                } else if neighbours.binary_search(&j).is_ok() {
                    0.0
                } else {
                    0.5
                };
                b.bernoulli(j, p_one)
            })
            .collect();
        b.replace(product, Node::Product { children: leaves });
        weighted.push((product, scaled(exponents[i]) / denominator));
    }
    let (children, weights) = weighted.into_iter().unzip();
    b.replace(root, Node::Sum { children, weights });
    let raw = b.into_raw(root);

    let network = Network::try_from(raw).expect("independent-set network is valid by construction");
    Ok(ReductionResult {
        network,
        certificate: Certificate::IndependentSet { normalizer },
        copies: 1,
        base_variables: n,
    })
}

/// `v / c` (raised to the number of copies): the MAP value reached exactly
/// when the graph has an independent set of size `v`.
pub fn mis_decision_threshold(result: &ReductionResult, v: u64) -> LogProb {
    match &result.certificate {
        Certificate::IndependentSet { normalizer } if v > 0 => {
            LogProb::from_ln((libm::log(v as f64) - ln_biguint(normalizer)) * result.copies as f64)
        }
        _ => LogProb::ZERO,
    }
}

pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0);
    libm::log(top as f64) + shift as f64 * core::f64::consts::LN_2
}
