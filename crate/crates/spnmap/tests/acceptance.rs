//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any of them fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spnmap::format::{parse_dimacs_cnf, parse_spn, serialize_spn};
use spnmap::{run_mis_experiment, ExperimentConfig};
use spnmap_core::experiments::{random_graph, random_spn, ratio};
use spnmap_core::reductions::{amplify, cnf_to_spn, disjoint_copies, mis_to_spn, CnfFormula, Graph, Literal};
use spnmap_core::{
    approx_factor_bound, argmax_product, decision_map, exact_map, max_product, Assignment, Evidence, LogProb,
    Network, NetworkBuilder, Solver,
};

type Check = fn() -> Result<String, String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

/// `a <= b` up to `tol` relative.
fn le_rel(a: f64, b: f64, tol: f64) -> bool {
    a <= b + tol * b.abs().max(a.abs())
}

fn every_configuration(cards: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut next = Some(vec![0; cards.len()]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut odo = current.clone();
        for i in (0..odo.len()).rev() {
            odo[i] += 1;
            if odo[i] < cards[i] {
                next = Some(odo);
                break;
            }
            odo[i] = 0;
        }
        Some(current)
    })
}

fn mixture() -> Network {
    let mut b = NetworkBuilder::new();
    let (x1a, x2a, x2b, x1b) = (b.bernoulli(0, 0.4), b.bernoulli(1, 0.7), b.bernoulli(1, 0.2), b.bernoulli(0, 0.9));
    let p1 = b.product(&[x1a, x2a]);
    let p2 = b.product(&[x1a, x2b]);
    let p3 = b.product(&[x1b, x2b]);
    let root = b.sum(&[(p1, 0.2), (p2, 0.5), (p3, 0.3)]);
    b.build(root).unwrap()
}

fn gap_fragment() -> Network {
    let mut b = NetworkBuilder::new();
    let one = b.bernoulli(0, 1.0);
    let zeros: Vec<_> = (0..3).map(|_| b.bernoulli(0, 0.0)).collect();
    let mut children = vec![(one, 5.0 / 16.0)];
    children.extend(zeros.iter().map(|&z| (z, 11.0 / 48.0)));
    let root = b.sum(&children);
    b.build(root).unwrap()
}

fn brute_force_mis(n: usize, edges: &[(usize, usize)]) -> u32 {
    (0u32..1 << n)
        .filter(|set| edges.iter().all(|&(u, v)| set >> u & 1 == 0 || set >> v & 1 == 0))
        .map(u32::count_ones)
        .max()
        .unwrap()
}

fn brute_force_sat(n: usize, clauses: &[[(usize, bool); 3]]) -> bool {
    (0u32..1 << n).any(|x| clauses.iter().all(|c| c.iter().any(|&(v, neg)| (x >> v & 1 == 1) != neg)))
}

/// Random 3-CNF over `3..=10` variables with `1..=8` clauses. Every fourth
/// instance draws 7 or 8 distinct sign patterns over one variable triple, so
/// unsatisfiable formulas show up too.
fn random_cnf(rng: &mut ChaCha8Rng, i: usize) -> (usize, Vec<[(usize, bool); 3]>) {
    let n = rng.random_range(3..=10);
    if i.is_multiple_of(4) {
        let vars: Vec<usize> = index::sample(rng, n, 3).into_vec();
        let mut patterns: Vec<u8> = (0..8).collect();
        patterns.shuffle(rng);
        let m = rng.random_range(7..=8);
        let clauses = patterns[..m]
            .iter()
            .map(|&p| [0, 1, 2].map(|k| (vars[k], p >> k & 1 == 1)))
            .collect();
        return (n, clauses);
    }
    let m = rng.random_range(1..=8);
    let clauses = (0..m)
        .map(|_| {
            let vars = index::sample(rng, n, 3).into_vec();
            [0, 1, 2].map(|k| (vars[k], rng.random_bool(0.5)))
        })
        .collect();
    (n, clauses)
}

fn formula(n: usize, clauses: &[[(usize, bool); 3]]) -> CnfFormula {
    CnfFormula::new(n, clauses.iter().map(|c| c.map(|(var, negated)| Literal { var, negated }))).unwrap()
}

fn normalizer_f64(r: &spnmap_core::reductions::ReductionResult) -> f64 {
    r.normalizer().unwrap().to_string().parse().unwrap()
}

fn c1_mixture_values() -> Result<String, String> {
    let s = mixture();
    let start = Instant::now();
    let v = s.evaluate(&Assignment::new(vec![1, 0])).unwrap().linear();
    let m = s.evaluate_marginal(&Evidence::from_pairs([(1, 0)]).unwrap()).unwrap().linear();
    let took = within(Duration::from_millis(1), start)?;
    if (v - 0.4).abs() > 1e-12 || (m - 0.7).abs() > 1e-12 {
        return Err(format!("S(1,0) = {v}, S(X2=0) = {m}"));
    }
    Ok(format!("S(1,0) = {v}, S(X2=0) = {m}, {took:?}"))
}

fn c2_gap_construction() -> Result<String, String> {
    let start = Instant::now();
    let fragment = gap_fragment();
    let mut worst: f64 = 0.0;
    for m in 1..=10 {
        let s = disjoint_copies(&fragment, m).map_err(|e| e.to_string())?;
        let r = ratio(&s, &Evidence::new()).unwrap();
        let expected = 2.2f64.powi(m as i32);
        let err = (r - expected).abs() / expected;
        worst = worst.max(err);
        if err > 1e-9 || r <= 2f64.powi(m as i32) {
            return Err(format!("m = {m}: ratio {r}, expected {expected}"));
        }
    }
    let took = within(Duration::from_millis(10), start)?;
    Ok(format!("ratio 2.2^m for m = 1..10, worst relative error {worst:.1e}, {took:?}"))
}

fn c3_solver_ordering() -> Result<String, String> {
    let start = Instant::now();
    let tol = 1e-9;
    let (mut queries, mut evidence_sets) = (0, 0);
    let mut violations = [0usize; 4];
    let mut worst_dominance = 1.0f64;
    let mut first_dominance_seed = None;
    for seed in 0..1000u64 {
        let vars = 1 + (seed % 8) as usize;
        let s = random_spn(vars, (seed % 6) as usize, 2 + (seed % 3) as usize, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xE71D);
        let mut random_evidence = Evidence::new();
        for v in 0..vars {
            if rng.random_bool(0.4) {
                random_evidence.insert(v, rng.random_range(0..2)).unwrap();
            }
        }
        evidence_sets += 1;
        let bound = approx_factor_bound(&s).degree_product();
        for e in [Evidence::new(), random_evidence] {
            queries += 1;
            let mp = max_product(&s, &e).unwrap();
            let am = argmax_product(&s, &e).unwrap();
            let ex = exact_map(&s, &e).unwrap();
            let pd = mp.pd_value.unwrap().linear();
            let (mp, am, ex) = (mp.value.linear(), am.value.linear(), ex.value.linear());
            let clauses = [le_rel(pd, mp, tol), le_rel(mp, am, tol), le_rel(am, ex, tol), le_rel(ex, pd * bound, tol)];
            for (count, ok) in violations.iter_mut().zip(clauses) {
                *count += usize::from(!ok);
            }
            if !clauses[1] {
                worst_dominance = worst_dominance.min(am / mp);
                first_dominance_seed.get_or_insert(seed);
            }
        }
    }
    let took = start.elapsed();
    let summary = format!(
        "{queries} queries on 1000 networks, {evidence_sets} random evidence sets; violations: \
         pd<=maxprod {}, maxprod<=amap {}, amap<=exact {}, pd*prod(d)>=exact {}; {took:?}",
        violations[0], violations[1], violations[2], violations[3]
    );
    within(Duration::from_secs(30), start)?;
    if violations.iter().any(|&v| v > 0) {
        let mut msg = summary;
        if let Some(seed) = first_dominance_seed {
            msg += &format!(
                "; argmax-product below max-product first at seed {seed}, worst amap/maxprod {worst_dominance:.4} \
                 (nested sums: the argmax-product proposal at an inner sum can discard the configuration \
                 max-product follows)"
            );
        }
        return Err(msg);
    }
    Ok(summary)
}

fn c4_independent_sets() -> Result<String, String> {
    let start = Instant::now();
    let pcts = [10.0, 20.0, 40.0, 60.0, 80.0, 100.0];
    for i in 0..200usize {
        let n = 2 + i % 11;
        let g: Graph = random_graph(n, pcts[i % pcts.len()], 7000 + i as u64);
        let edges: Vec<_> = g.edges().collect();
        let r = mis_to_spn(&g).unwrap();
        let ex = exact_map(&r.network, &Evidence::new()).unwrap();
        let scaled = normalizer_f64(&r) * ex.value.linear();
        let alpha = brute_force_mis(n, &edges);
        if scaled.round() as u32 != alpha || (scaled - alpha as f64).abs() > 1e-6 {
            return Err(format!("graph {i} (n = {n}): c * MAP = {scaled}, independence number {alpha}"));
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("200 graphs with n in 2..=12 match brute force, {took:?}"))
}

fn c5_satisfiability() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3C4F);
    let (mut sat_count, mut unsat_count) = (0, 0);
    for i in 0..100 {
        let (n, clauses) = random_cnf(&mut rng, i);
        let r = cnf_to_spn(&formula(n, &clauses)).unwrap();
        let e = Evidence::new();
        let sat = brute_force_sat(n, &clauses);
        let decided = decision_map(&r.network, &e, r.threshold().unwrap(), Solver::Exact).unwrap();
        if decided != sat {
            return Err(format!("formula {i}: decision {decided}, brute force {sat}"));
        }
        if sat {
            sat_count += 1;
        } else {
            unsat_count += 1;
            let ex = exact_map(&r.network, &e).unwrap().value.linear();
            let bound = r.unsat_bound().unwrap().linear();
            if !le_rel(ex, bound, 1e-9) {
                return Err(format!("formula {i}: unsatisfiable but MAP {ex} > {bound}"));
            }
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("100 formulas ({sat_count} satisfiable, {unsat_count} not) match brute force, {took:?}"))
}

fn c6_amplification() -> Result<String, String> {
    let start = Instant::now();
    let text = std::fs::read_to_string(data("two_clauses.cnf")).map_err(|e| e.to_string())?;
    let base = cnf_to_spn(&parse_dimacs_cnf(&text).map_err(|e| e.to_string())?).unwrap();
    let mut found = Vec::new();
    for (q, nodes) in [(1, 71), (2, 143)] {
        let r = amplify(&base, q).unwrap();
        let ex = exact_map(&r.network, &Evidence::new()).unwrap().value;
        let expected = LogProb::from_linear(1.0 / 14.0).powi(q as u32);
        if r.network.num_nodes() != nodes || !ex.approx_eq(expected, 1e-9) {
            return Err(format!("q = {q}: {} nodes, MAP {ex}", r.network.num_nodes()));
        }
        found.push(format!("q={q}: {nodes} nodes, MAP {:.6e}", ex.linear()));
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("{}, {took:?}", found.join("; ")))
}

fn c7_ratio_study() -> Result<String, String> {
    let start = Instant::now();
    let mut summaries = Vec::new();
    for seeded in [false, true] {
        let config = ExperimentConfig {
            vertex_counts: vec![5, 10, 20],
            edge_pcts: vec![10.0, 20.0, 40.0, 60.0],
            repetitions: 100,
            base_seed: 20_170_811,
            seeded_leaf_ties: seeded,
        };
        let rows = run_mis_experiment(&config).map_err(|e| e.to_string())?;
        for row in &rows {
            let nodes = row.vertices * row.vertices + row.vertices + 1;
            if row.nodes != nodes || ![31, 111, 421].contains(&row.nodes) {
                return Err(format!("{} vertices: {} nodes", row.vertices, row.nodes));
            }
            if let Some(bad) = row.ratios.iter().find(|&&r| r < 1.0 - 1e-9) {
                return Err(format!("{} vertices, {}%: ratio {bad}", row.vertices, row.edge_pct));
            }
            if !(1.0..=6.0).contains(&row.mean_ratio) {
                return Err(format!("{} vertices, {}%: mean {}", row.vertices, row.edge_pct, row.mean_ratio));
            }
        }
        let means: Vec<String> = rows.iter().map(|r| format!("{:.2}", r.mean_ratio)).collect();
        let rule = if seeded { "seeded" } else { "lowest" };
        summaries.push(format!("{rule} leaf ties means [{}]", means.join(" ")));
    }
    let took = within(Duration::from_secs(120), start)?;
    Ok(format!("{}; {took:?}", summaries.join("; ")))
}

fn c8_scale() -> Result<String, String> {
    let r = mis_to_spn(&random_graph(80, 10.0, 80)).unwrap();
    if r.network.num_nodes() != 6481 {
        return Err(format!("{} nodes", r.network.num_nodes()));
    }
    let mut times = Vec::new();
    for solver in [Solver::MaxProduct, Solver::ArgmaxProduct] {
        let start = Instant::now();
        solver.solve(&r.network, &Evidence::new()).unwrap();
        let took = within(Duration::from_secs(1), start).map_err(|e| format!("{solver}: {e}"))?;
        times.push(format!("{solver} {took:?}"));
    }
    Ok(format!("6481 nodes: {}", times.join(", ")))
}

fn c9_external_files() -> Result<String, String> {
    let golden = [("mixture.spn", [0.3, 0.4, 0.4]), ("nested.spn", [0.44, 0.36, 0.44])];
    for (name, expected) in golden {
        let text = std::fs::read_to_string(data(name)).map_err(|e| e.to_string())?;
        let s = Network::try_from(parse_spn(&text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for (solver, want) in [Solver::MaxProduct, Solver::ArgmaxProduct, Solver::Exact].into_iter().zip(expected) {
            let got = solver.solve(&s, &Evidence::new()).unwrap().value.linear();
            if (got - want).abs() > 1e-12 {
                return Err(format!("{name}, {solver}: {got}, expected {want}"));
            }
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_spnmap"))
        .args(["map", data("nested.spn").to_str().unwrap(), "--algo", "exact"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    if !out.status.success() || !stdout.starts_with("value 0.44") || !stdout.contains("config 0=1") {
        return Err(format!("command line: {stdout}"));
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for seed in 0..20 {
        let s = random_spn(6, 5, 3, seed);
        let path = dir.path().join(format!("r{seed}.spn"));
        std::fs::write(&path, serialize_spn(&s)).map_err(|e| e.to_string())?;
        let back = Network::try_from(parse_spn(&std::fs::read_to_string(&path).unwrap()).unwrap()).unwrap();
        for solver in Solver::ALL {
            if solver.solve(&s, &Evidence::new()) != solver.solve(&back, &Evidence::new()) {
                return Err(format!("seed {seed}: {solver} differs after reload"));
            }
        }
    }
    Ok("2 hand-written files, the command line, and 20 written-and-reloaded networks".into())
}

fn c10_normalization() -> Result<String, String> {
    let start = Instant::now();
    let mut networks: Vec<(String, Network)> = Vec::new();
    for seed in 0..64u64 {
        let vars = 1 + (seed % 16) as usize;
        networks.push((format!("random {seed}"), random_spn(vars, (seed % 6) as usize, 3, seed)));
    }
    for n in 2..=16 {
        let g = random_graph(n, 30.0, n as u64);
        networks.push((format!("independent set n={n}"), mis_to_spn(&g).unwrap().network));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..20 {
        let (n, clauses) = random_cnf(&mut rng, i);
        networks.push((format!("cnf {i}"), cnf_to_spn(&formula(n, &clauses)).unwrap().network));
    }
    let two_clauses = cnf_to_spn(&parse_dimacs_cnf(&std::fs::read_to_string(data("two_clauses.cnf")).unwrap()).unwrap());
    networks.push(("two clauses, 2 copies".into(), amplify(&two_clauses.unwrap(), 2).unwrap().network));
    networks.push(("gap fragment, 10 copies".into(), disjoint_copies(&gap_fragment(), 10).unwrap()));
    networks.push(("mixture".into(), mixture()));

    let mut worst: f64 = 0.0;
    for (name, s) in &networks {
        let count = s.num_configurations().unwrap();
        if count > 1 << 16 {
            return Err(format!("{name}: {count} configurations"));
        }
        let total: f64 = every_configuration(s.cardinalities())
            .map(|x| s.evaluate(&Assignment::new(x)).unwrap().linear())
            .sum();
        worst = worst.max((total - 1.0).abs());
        if (total - 1.0).abs() > 1e-9 {
            return Err(format!("{name}: total {total}"));
        }
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!("{} networks up to 2^16 configurations, worst |sum - 1| = {worst:.1e}, {took:?}", networks.len()))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 10] = [
        ("mixture golden values", c1_mixture_values),
        ("gap construction ratio 2.2^m", c2_gap_construction),
        ("solver ordering on random networks", c3_solver_ordering),
        ("independent set oracle", c4_independent_sets),
        ("3-CNF oracle", c5_satisfiability),
        ("amplification", c6_amplification),
        ("ratio study, desk scale", c7_ratio_study),
        ("scale smoke test", c8_scale),
        ("external network files", c9_external_files),
        ("normalization", c10_normalization),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
