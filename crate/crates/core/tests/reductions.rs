use proptest::prelude::*;
use spnmap_core::reductions::{amplify, cnf_to_spn, mis_decision_threshold, mis_to_spn, CnfFormula, Graph, Literal};
use spnmap_core::{decision_map, exact_map, Evidence, Solver};

fn brute_force_mis(n: usize, edges: &[(usize, usize)]) -> u32 {
    (0u32..1 << n)
        .filter(|set| edges.iter().all(|&(u, v)| set >> u & 1 == 0 || set >> v & 1 == 0))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0)
}

fn brute_force_sat(n: usize, clauses: &[[(usize, bool); 3]]) -> bool {
    (0u32..1 << n).any(|x| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&(var, negated)| (x >> var & 1 == 1) != negated))
    })
}

fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        (Just(n), proptest::sample::subsequence(pairs, 0..=k))
    })
}

fn three_cnf() -> impl Strategy<Value = (usize, Vec<[(usize, bool); 3]>)> {
    (3usize..=6).prop_flat_map(|n| {
        let clause = (proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 3), any::<[bool; 3]>())
            .prop_map(|(vars, signs)| [(vars[0], signs[0]), (vars[1], signs[1]), (vars[2], signs[2])]);
        (Just(n), proptest::collection::vec(clause, 1..=6))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn independent_set_value(g in graph()) {
        let (n, edges) = g;
        let r = mis_to_spn(&Graph::with_edges(n, edges.iter().copied()).unwrap()).unwrap();
        let alpha = brute_force_mis(n, &edges);
        let c = r.normalizer().unwrap().to_string().parse::<f64>().unwrap();
        let ex = exact_map(&r.network, &Evidence::new()).unwrap();
        prop_assert_eq!((ex.value.linear() * c).round() as u32, alpha);
        prop_assert_eq!(r.network.num_nodes(), n * n + n + 1);
        let e = Evidence::new();
        prop_assert!(decision_map(&r.network, &e, mis_decision_threshold(&r, alpha as u64), Solver::Exact).unwrap());
        let above = mis_decision_threshold(&r, alpha as u64 + 1);
        match decision_map(&r.network, &e, above, Solver::Exact) {
            Ok(found) => prop_assert!(!found),
            // (alpha + 1) / c can exceed 1 on tiny graphs.
            Err(_) => prop_assert!(above.linear() > 1.0),
        }
    }

    #[test]
    fn satisfiability_threshold(f in three_cnf()) {
        let (n, clauses) = f;
        let lits = clauses.iter().map(|c| c.map(|(var, neg)| Literal { var, negated: neg }));
        let r = cnf_to_spn(&CnfFormula::new(n, lits).unwrap()).unwrap();
        let sat = brute_force_sat(n, &clauses);
        let e = Evidence::new();
        prop_assert_eq!(decision_map(&r.network, &e, r.threshold().unwrap(), Solver::Exact).unwrap(), sat);
        let ex = exact_map(&r.network, &e).unwrap();
        if !sat {
            prop_assert!(ex.value.linear() <= r.unsat_bound().unwrap().linear() * (1.0 + 1e-9));
        }
        let twice = amplify(&r, 2).unwrap();
        if n <= 5 {
            let ex2 = exact_map(&twice.network, &e).unwrap();
            prop_assert!(ex2.value.approx_eq(ex.value.powi(2), 1e-9));
        }
    }
}
