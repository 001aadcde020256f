use alloc::vec::Vec;

use super::{Certificate, CnfFormula, ReductionResult};
use crate::error::ReductionError;
use crate::network::{Network, NetworkBuilder, Node};
use crate::prob::LogProb;

/// Height-2 tree whose MAP value reaches `2^(3-n) / 7` iff the formula is
/// satisfiable.
///
/// Each clause contributes seven products, one per satisfying assignment of
/// its three variables: those leaves are deterministic, every other variable
/// is uniform. The products of one clause have disjoint supports, so a
/// configuration satisfying the clause makes exactly one of them equal to
/// `2^(3-n)`. The root mixes all `7m` products uniformly.
///
/// Local assignments are enumerated in binary order with the clause's first
/// literal most significant. Node ids: root 0, then each product followed by
/// its `n` leaves.
pub fn cnf_to_spn(f: &CnfFormula) -> Result<ReductionResult, ReductionError> {
    let n = f.num_vars();
    let m = f.num_clauses();
    if m == 0 {
        return Err(ReductionError::NoClauses);
    }
    let weight = 1.0 / (7 * m) as f64;

    let mut b = NetworkBuilder::with_capacity(1 + 7 * m * (n + 1));
    let root = b.push(Node::Sum { children: Vec::new(), weights: Vec::new() });
    let mut children = Vec::with_capacity(7 * m);
    for clause in f.clauses() {
        let lits = clause.literals();
        for local in 0u8..8 {
            let value_of = |pos: usize| (local >> (2 - pos)) & 1 == 1;
            if (0..3).all(|pos| !lits[pos].is_satisfied_by(value_of(pos))) {
                continue;
            }
            let product = b.product(&[]);
            let leaves = (0..n)
                .map(|var| match lits.iter().position(|l| l.var == var) {
                    Some(pos) => b.bernoulli(var, if value_of(pos) { 1.0 } else { 0.0 }),
                    None => b.bernoulli(var, 0.5),
                })
                .collect();
            b.replace(product, Node::Product { children: leaves });
            children.push(product);
        }
    }
    let weights = alloc::vec![weight; children.len()];
    b.replace(root, Node::Sum { children, weights });

    let network = Network::try_from(b.into_raw(root)).expect("3-CNF network is valid by construction");
    Ok(ReductionResult {
        network,
        certificate: Certificate::Satisfiability {
            clauses: m,
            threshold: sat_threshold(n),
        },
        copies: 1,
        base_variables: n,
    })
}

/// `2^(3-n) / 7`.
pub(crate) fn sat_threshold(n: usize) -> LogProb {
    LogProb::from_ln((3.0 - n as f64) * core::f64::consts::LN_2 - libm::log(7.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::exact_map;
    use crate::network::Evidence;
    use crate::reductions::Literal;

    fn two_clauses() -> CnfFormula {
        let (p, q) = (Literal::positive, Literal::negative);
        CnfFormula::new(4, [[q(0), p(1), q(2)], [q(0), p(2), p(3)]]).unwrap()
    }

    #[test]
    fn two_clauses_structure() {
        let r = cnf_to_spn(&two_clauses()).unwrap();
        let st = r.network.stats();
        assert_eq!((st.nodes, st.sums, st.products, st.leaves), (71, 1, 14, 56));
        assert_eq!(st.height, 2);
        match r.network.node(0).unwrap() {
            Node::Sum { weights, .. } => assert!(weights.iter().all(|w| (w - 1.0 / 14.0).abs() < 1e-15)),
            _ => panic!(),
        }
        assert!((r.threshold().unwrap().linear() - 1.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn two_clauses_is_satisfiable_at_threshold() {
        let r = cnf_to_spn(&two_clauses()).unwrap();
        let m = exact_map(&r.network, &Evidence::new()).unwrap();
        assert!((m.value.linear() - 1.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn all_eight_clauses_fall_short() {
        let clauses: Vec<[Literal; 3]> = (0u8..8)
            .map(|s| {
                core::array::from_fn(|i| Literal { var: i, negated: (s >> i) & 1 == 1 })
            })
            .collect();
        let f = CnfFormula::new(3, clauses).unwrap();
        let r = cnf_to_spn(&f).unwrap();
        let m = exact_map(&r.network, &Evidence::new()).unwrap();
        // Every assignment satisfies exactly 7 of 8 clauses: 7 / 56.
        assert!((m.value.linear() - 1.0 / 8.0).abs() < 1e-12);
        assert!(m.value < r.threshold().unwrap());
    }

    #[test]
    fn empty_formula_is_rejected() {
        let f = CnfFormula::new(3, Vec::<[Literal; 3]>::new()).unwrap();
        assert_eq!(cnf_to_spn(&f).unwrap_err(), ReductionError::NoClauses);
    }

    #[test]
    fn single_clause_meets_threshold_exactly() {
        let p = Literal::positive;
        let f = CnfFormula::new(3, [[p(0), p(1), p(2)]]).unwrap();
        let r = cnf_to_spn(&f).unwrap();
        let m = exact_map(&r.network, &Evidence::new()).unwrap();
        assert!((m.value.linear() - 1.0 / 7.0).abs() < 1e-12);
        assert!(m.value.approx_eq(r.threshold().unwrap(), 1e-12));
    }
}
