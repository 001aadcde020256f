use super::{MapResult, Solver};
use crate::error::QueryError;
use crate::network::{Assignment, Evaluator, Evidence, Network};
use crate::prob::LogProb;

pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// A later configuration replaces the incumbent only if it is better by
/// more than this (in log space), so float noise between equal values
/// cannot override the lexicographic tie-break.
const TIE_SLACK: f64 = 1e-12;

/// Exhaustive MAP over all configurations consistent with `e`, with the
/// default enumeration cap.
pub fn exact_map(network: &Network, e: &Evidence) -> Result<MapResult, QueryError> {
    exact_map_with_cap(network, e, DEFAULT_ENUMERATION_CAP)
}

/// Exhaustive MAP. Configurations are visited in lexicographic order
/// (variable 0 most significant); the first maximum is returned.
pub fn exact_map_with_cap(network: &Network, e: &Evidence, cap: u128) -> Result<MapResult, QueryError> {
    let dense = e.to_dense(network)?;
    let free: alloc::vec::Vec<usize> = (0..network.num_vars()).filter(|&v| dense[v].is_none()).collect();
    let configurations = free
        .iter()
        .try_fold(1u128, |acc, &v| acc.checked_mul(network.cardinalities()[v] as u128))
        .unwrap_or(u128::MAX);
    if configurations > cap {
        return Err(QueryError::EnumerationCapExceeded { configurations, cap });
    }

    let mut x: alloc::vec::Vec<usize> = dense.iter().map(|v| v.unwrap_or(0)).collect();
    let mut evaluator = Evaluator::new(network);
    let mut best_x = x.clone();
    let mut best = evaluator.full(&x);
    'enumerate: loop {
        // Odometer over the free variables, last one fastest.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                break 'enumerate;
            }
            pos -= 1;
            let var = free[pos];
            x[var] += 1;
            if x[var] < network.cardinalities()[var] {
                break;
            }
            x[var] = 0;
        }
        let score = evaluator.full(&x);
        if score > best + TIE_SLACK {
            best = score;
            best_x.copy_from_slice(&x);
        }
    }

    Ok(MapResult {
        configuration: Assignment::new(best_x),
        value: LogProb::from_ln(best),
        solver: Solver::Exact,
        pd_value: None,
    })
}
