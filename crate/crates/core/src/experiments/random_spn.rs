use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::network::{Network, NetworkBuilder, NodeId};

/// Random valid network over `num_vars` binary variables.
///
/// Sum nodes mix 2..=`max_fanout` sub-networks over the same scope; product
/// nodes split their scope into 2..=`max_fanout` random blocks (or into
/// singletons when only one level of height is left). Sums and products
/// alternate where the height budget allows. About one child in six reuses
/// an already built node with the same scope, so the result is generally a
/// DAG. Some leaves are deterministic. `max_fanout` below 2 is treated as 2;
/// a height of 0 with more than one variable is treated as 1.
pub fn random_spn(num_vars: usize, max_height: usize, max_fanout: usize, seed: u64) -> Network {
    assert!(num_vars >= 1, "random_spn needs at least one variable");
    let height = if num_vars > 1 { max_height.max(1) } else { max_height };
    let mut g = Generator {
        rng: super::rng(seed),
        b: NetworkBuilder::new(),
        fanout: max_fanout.max(2),
        built: BTreeMap::new(),
        heights: Vec::new(),
    };
    let scope: Vec<usize> = (0..num_vars).collect();
    let root = g.node(&scope, height, true);
    g.b.build(root).expect("generated network is valid")
}

struct Generator {
    rng: ChaCha8Rng,
    b: NetworkBuilder,
    fanout: usize,
    /// Scope -> (node, height) of everything built so far.
    built: BTreeMap<Vec<usize>, Vec<(NodeId, usize)>>,
    /// Height of every node, by id.
    heights: Vec<usize>,
}

impl Generator {
    fn node(&mut self, scope: &[usize], height: usize, prefer_sum: bool) -> NodeId {
        if let Some(id) = self.reuse(scope, height) {
            return id;
        }
        let (id, used) = if scope.len() == 1 {
            if height == 0 || self.rng.random_bool(0.5) {
                (self.leaf(scope[0]), 0)
            } else {
                self.sum(scope, height)
            }
        } else if prefer_sum && height >= 2 && self.rng.random_bool(0.7) {
            self.sum(scope, height)
        } else {
            self.product(scope, height)
        };
        self.built.entry(scope.to_vec()).or_default().push((id, used));
        debug_assert_eq!(self.heights.len(), id);
        self.heights.push(used);
        id
    }

    fn reuse(&mut self, scope: &[usize], height: usize) -> Option<NodeId> {
        if !self.rng.random_bool(1.0 / 6.0) {
            return None;
        }
        let fits: Vec<NodeId> = self
            .built
            .get(scope)?
            .iter()
            .filter(|&&(_, h)| h <= height)
            .map(|&(id, _)| id)
            .collect();
        fits.choose(&mut self.rng).copied()
    }

    fn leaf(&mut self, var: usize) -> NodeId {
        let p = match self.rng.random_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => self.rng.random_range(0.02..0.98),
        };
        self.b.bernoulli(var, p)
    }

    fn sum(&mut self, scope: &[usize], height: usize) -> (NodeId, usize) {
        let k = self.rng.random_range(2..=self.fanout);
        let mut weighted: Vec<(NodeId, f64)> = Vec::with_capacity(k);
        let mut used = 0;
        for _ in 0..k {
            let child = self.node(scope, height - 1, false);
            used = used.max(self.heights[child] + 1);
            weighted.push((child, self.rng.random_range(0.05..1.0)));
        }
        let total: f64 = weighted.iter().map(|w| w.1).sum();
        weighted.iter_mut().for_each(|w| w.1 /= total);
        (self.b.sum(&weighted), used)
    }

    fn product(&mut self, scope: &[usize], height: usize) -> (NodeId, usize) {
        let blocks: Vec<Vec<usize>> = if height == 1 {
            scope.iter().map(|&v| alloc::vec![v]).collect()
        } else {
            let mut shuffled = scope.to_vec();
            shuffled.shuffle(&mut self.rng);
            let k = self.rng.random_range(2..=self.fanout.min(scope.len()));
            // k - 1 distinct cut points in 1..len.
            let mut cuts = rand::seq::index::sample(&mut self.rng, scope.len() - 1, k - 1).into_vec();
            cuts.iter_mut().for_each(|c| *c += 1);
            cuts.sort_unstable();
            cuts.push(scope.len());
            let mut start = 0;
            cuts.iter()
                .map(|&end| {
                    let mut block = shuffled[start..end].to_vec();
                    block.sort_unstable();
                    start = end;
                    block
                })
                .collect()
        };
        let mut children = Vec::with_capacity(blocks.len());
        let mut used = 0;
        for block in &blocks {
            let child = self.node(block, height - 1, true);
            used = used.max(self.heights[child] + 1);
            children.push(child);
        }
        (self.b.product(&children), used)
    }
}
