//! Seeded instance generators and the argmax-product / max-product ratio.

mod random_spn;

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use random_spn::random_spn;

use crate::error::QueryError;
use crate::map::{argmax_product, max_product};
use crate::network::{Evidence, Network};
use crate::prob::LogProb;
use crate::reductions::Graph;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent per-repetition seed for one experiment cell.
pub fn derive_seed(base: u64, vertices: usize, edge_pct: f64, repetition: usize) -> u64 {
    [vertices as u64, edge_pct.to_bits(), repetition as u64]
        .iter()
        .fold(mix(base), |acc, &part| mix(acc ^ part))
}

/// Edge count for a percentage of `n (n - 1) / 2`, rounded half up, at
/// least one.
pub fn edge_count(n: usize, edge_pct: f64) -> usize {
    let max_edges = n * n.saturating_sub(1) / 2;
    let k = libm::floor(edge_pct * max_edges as f64 / 100.0 + 0.5) as usize;
    k.clamp(1.min(max_edges), max_edges)
}

/// Uniform random graph with [`edge_count`] distinct edges, drawn without
/// replacement. Deterministic in `seed`.
pub fn random_graph(n: usize, edge_pct: f64, seed: u64) -> Graph {
    let max_edges = n * n.saturating_sub(1) / 2;
    let k = edge_count(n, edge_pct);
    let mut rng = rng(seed);
    let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, max_edges, k).into_vec();
    picked.sort_unstable();
    let mut g = Graph::new(n);
    // Pairs (u, v), u < v, enumerated row by row.
    let (mut row, mut row_start) = (0usize, 0usize);
    for index in picked {
        while index >= row_start + (n - 1 - row) {
            row_start += n - 1 - row;
            row += 1;
        }
        let v = row + 1 + (index - row_start);
        g.add_edge(row, v).expect("generated edge is in range");
    }
    g
}

/// `S(amap) / S(PD)`: 1 if both are zero, `+inf` if only max-product is.
pub fn ratio_of(argmax_value: LogProb, max_product_value: LogProb) -> f64 {
    match (argmax_value.is_zero(), max_product_value.is_zero()) {
        (true, true) => 1.0,
        _ => argmax_value / max_product_value,
    }
}

pub fn ratio(network: &Network, e: &Evidence) -> Result<f64, QueryError> {
    let amap = argmax_product(network, e)?;
    let mp = max_product(network, e)?;
    Ok(ratio_of(amap.value, mp.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures::{det_pair, gap_fragment, mixture};

    #[test]
    fn edge_counts() {
        assert_eq!(edge_count(4, 100.0), 6);
        assert_eq!(edge_count(5, 20.0), 2);
        assert_eq!(edge_count(5, 10.0), 1);
        assert_eq!(edge_count(5, 1.0), 1);
        assert_eq!(edge_count(5, 15.0), 2); // 1.5 rounds up
        assert_eq!(edge_count(80, 10.0), 316);
    }

    #[test]
    fn complete_at_full_percentage() {
        let g = random_graph(4, 100.0, 7);
        assert_eq!(g, Graph::complete(4));
    }

    #[test]
    fn graphs_are_seeded() {
        let g = random_graph(5, 20.0, 1);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g, random_graph(5, 20.0, 1));
        let distinct = (0..20u64)
            .map(|s| random_graph(5, 10.0, s).edges().next().unwrap())
            .collect::<alloc::collections::BTreeSet<_>>();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn every_pair_is_reachable() {
        // All 10 single-edge graphs on 5 vertices show up for some seed.
        let seen = (0..500u64)
            .map(|s| random_graph(5, 10.0, s).edges().next().unwrap())
            .collect::<alloc::collections::BTreeSet<_>>();
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn seeds_differ_per_cell() {
        let a = derive_seed(1, 5, 10.0, 0);
        assert_ne!(a, derive_seed(1, 5, 10.0, 1));
        assert_ne!(a, derive_seed(1, 5, 20.0, 0));
        assert_ne!(a, derive_seed(2, 5, 10.0, 0));
        assert_eq!(a, derive_seed(1, 5, 10.0, 0));
    }

    #[test]
    fn ratios() {
        let r = ratio(&mixture(), &Evidence::new()).unwrap();
        assert!((r - 4.0 / 3.0).abs() < 1e-12);
        let r = ratio(&gap_fragment(), &Evidence::new()).unwrap();
        assert!((r - 2.2).abs() < 1e-12);
        assert_eq!(ratio(&det_pair(), &Evidence::new()).unwrap(), 1.0);
        assert_eq!(ratio_of(LogProb::ZERO, LogProb::ZERO), 1.0);
        assert!(ratio_of(LogProb::ONE, LogProb::ZERO).is_infinite());
    }
}
