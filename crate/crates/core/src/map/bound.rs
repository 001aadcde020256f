use crate::network::Network;

/// Exponent constant `log2(3) / 3` rounded up: `prod d_i < 2^(0.5284 s)`
/// whenever `s` exceeds the total sum-node out-degree.
pub const SIZE_EXPONENT: f64 = 0.5284;

/// Approximation guarantee of max-product on a given network.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxBound {
    /// `log2` of the product of all sum-node out-degrees. Max-product's
    /// value times this product is at least the MAP value.
    pub log2_degree_product: f64,
    /// Node plus arc count, a lower bound on any encoding size.
    pub size: usize,
    /// `0.5284 * size`.
    pub exponent_bound: f64,
    /// `log2_degree_product < exponent_bound`, or the network has no sums.
    pub holds: bool,
}

impl ApproxBound {
    pub fn degree_product(&self) -> f64 {
        libm::exp2(self.log2_degree_product)
    }
}

pub fn approx_factor_bound(network: &Network) -> ApproxBound {
    let stats = network.stats();
    let log2_degree_product: f64 = stats.sum_degrees.iter().map(|&d| libm::log2(d as f64)).sum();
    let size = stats.nodes + stats.arcs;
    let exponent_bound = SIZE_EXPONENT * size as f64;
    ApproxBound {
        log2_degree_product,
        size,
        exponent_bound,
        holds: stats.sums == 0 || log2_degree_product < exponent_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures::{det_pair, mixture};

    #[test]
    fn mixture_bound() {
        let b = approx_factor_bound(&mixture());
        assert!((b.log2_degree_product - libm::log2(3.0)).abs() < 1e-15);
        assert_eq!(b.size, 17);
        assert!(b.holds);
    }

    #[test]
    fn no_sums_is_factor_one() {
        let b = approx_factor_bound(&det_pair());
        assert_eq!(b.log2_degree_product, 0.0);
        assert_eq!(b.degree_product(), 1.0);
        assert!(b.holds);
    }

    #[test]
    fn constant_dominates_cube_root_of_three() {
        assert!(SIZE_EXPONENT > libm::log2(3.0) / 3.0);
    }
}
