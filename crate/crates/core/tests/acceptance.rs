//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common as oracle;
use redumis::cli::format_solution;
use redumis::local_search::SearchState;
use redumis::partition::node_separator;
use redumis::reductions::kernelize;
use redumis::solver::{solve, SolverConfig};
use redumis::{Graph, VertexSet};

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edge_list(n, edges).unwrap()
}

fn kernel_adjacency(g: &Graph) -> Vec<Vec<usize>> {
    g.vertices().map(|v| g.neighbors(v).to_vec()).collect()
}

/// The shared corpus for criteria 1 and 2.
fn er_corpus() -> impl Iterator<Item = (usize, Vec<(usize, usize)>)> {
    const PS: [f64; 4] = [0.1, 0.2, 0.3, 0.5];
    (0..2000u64).map(|i| {
        let n = 4 + (i as usize / 4) % 13;
        (n, oracle::gnp(n, PS[i as usize % 4], 10_000 + i))
    })
}

fn kernel_exactness() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    for (n, edges) in er_corpus() {
        let g = graph(n, &edges);
        let k = kernelize(&g);
        let lhs = oracle::alpha(&oracle::adjacency(n, &edges));
        let rhs = oracle::alpha(&kernel_adjacency(&k.graph)) + k.theta;
        failures += usize::from(lhs != rhs);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(failures == 0 && secs < 60.0, format!("2000 graphs, {failures} failures, {secs:.2}s"))
}

fn reconstruction() -> Outcome {
    let mut failures = 0;
    let mut restored = 0;
    for (n, edges) in er_corpus() {
        let g = graph(n, &edges);
        let alpha = oracle::alpha(&oracle::adjacency(n, &edges));
        let k = kernelize(&g);
        for mis in oracle::all_maximum_independent_sets(&kernel_adjacency(&k.graph)).iter().take(16) {
            let sol = VertexSet::from_vertices(k.graph.num_vertices(), mis.iter().copied());
            let ok = match k.restore_solution(&sol) {
                Ok(s) => g.is_independent_set(&s) && s.len() == alpha,
                Err(_) => false,
            };
            failures += usize::from(!ok);
            restored += 1;
        }
    }
    outcome(failures == 0, format!("{restored} restorations, {failures} failures"))
}

fn end_to_end() -> Outcome {
    let mut optimal = 0;
    let mut valid = 0;
    let total = 200;
    for i in 0..total as u64 {
        let n = 6 + (i as usize % 9);
        let p = [0.15, 0.25, 0.35, 0.5][(i / 9) as usize % 4];
        let edges = oracle::gnp(n, p, 20_000 + i);
        let g = graph(n, &edges);
        let config = SolverConfig {
            mu: 100,
            time_limit: Duration::from_secs(2),
            seed: i,
            ..SolverConfig::default()
        };
        let best = solve(&g, &config, |_| {}).unwrap().best;
        valid += usize::from(g.is_independent_set(&best.vertices));
        optimal += usize::from(best.size == oracle::alpha(&oracle::adjacency(n, &edges)));
    }
    outcome(
        optimal * 100 >= 99 * total && valid == total,
        format!("optimal {optimal}/{total}, valid {valid}/{total}"),
    )
}

fn reduction_solvable() -> Outcome {
    let config = |seed| SolverConfig {
        mu: 100,
        time_limit: Duration::from_secs(10),
        seed,
        ..SolverConfig::default()
    };
    let mut forest_hits = 0;
    for i in 0..50u64 {
        let n = 20 + (i as usize * 97) % 981;
        let edges = oracle::random_forest(n, 0.85, 30_000 + i);
        let g = graph(n, &edges);
        let got = solve(&g, &config(i), |_| {}).unwrap().best.size;
        forest_hits += usize::from(got == oracle::forest_alpha(&oracle::adjacency(n, &edges)));
    }
    let mut empty_hits = 0;
    let mut found = 0;
    let mut seed = 40_000u64;
    while found < 50 {
        seed += 1;
        let n = 10 + (seed as usize % 31);
        let edges = oracle::gnp(n, 2.5 / n as f64, seed);
        let g = graph(n, &edges);
        if kernelize(&g).graph.num_vertices() > 0 {
            continue;
        }
        found += 1;
        let got = solve(&g, &config(seed), |_| {}).unwrap().best.size;
        empty_hits += usize::from(got == oracle::alpha(&oracle::adjacency(n, &edges)));
    }
    outcome(
        forest_hits == 50 && empty_hits == 50,
        format!("forests {forest_hits}/50, empty-kernel graphs {empty_hits}/50"),
    )
}

fn local_optimality() -> Outcome {
    let mut failures = 0;
    for i in 0..500u64 {
        let n = 10 + (i as usize * 37) % 191;
        let edges = oracle::gnp(n, 3.0 / n as f64 + 0.01 * (i % 5) as f64, 50_000 + i);
        let g = graph(n, &edges);
        let mut state = SearchState::new(&g, i);
        state.greedy_maximalize_random_ties(None);
        let mut fresh = SearchState::from_solution(&g, state.solution(), i);
        fresh.local_search_pass();
        let in_solution: Vec<bool> = (0..n).map(|v| fresh.solution().contains(v)).collect();
        failures += usize::from(oracle::has_one_two_swap(&oracle::adjacency(n, &edges), &in_solution));
    }
    outcome(failures == 0, format!("500 instances, {failures} with a remaining swap"))
}

fn separator_validity() -> Outcome {
    let mut failures = 0;
    for i in 0..1000u64 {
        let (n, edges) = match i % 3 {
            0 => {
                let (r, c) = (2 + (i as usize % 17), 2 + (i as usize / 3 % 13));
                (r * c, oracle::grid(r, c))
            }
            1 => {
                let n = 3 + (i as usize % 200);
                (n, oracle::cycle(n))
            }
            _ => {
                let n = 1 + (i as usize % 150);
                (n, oracle::gnp(n, (4.0 / n as f64).min(1.0), 60_000 + i))
            }
        };
        let g = graph(n, &edges);
        let epsilon = [0.0, 0.1, 0.25, 0.5][(i / 3) as usize % 4];
        failures += usize::from(node_separator(&g, epsilon, i).validate(&g).is_err());
    }
    outcome(failures == 0, format!("1000 calls, {failures} invalid"))
}

fn perturbation_law() -> Outcome {
    let g = graph(64, &oracle::cycle(64));
    let mut state = SearchState::new(&g, 7);
    let samples = 100_000;
    let ones = (0..samples).filter(|_| state.sample_force_count() == 1).count();
    let p = ones as f64 / samples as f64;
    outcome((p - 0.5).abs() <= 0.01, format!("P(f=1) = {p:.4}"))
}

fn kernel_shrinkage() -> Outcome {
    let (n, edges) = oracle::road_like(150, 0.2, 4, 70_000);
    let g = graph(n, &edges);
    let start = Instant::now();
    let k = kernelize(&g);
    let secs = start.elapsed().as_secs_f64();
    let kn = k.graph.num_vertices();
    let ratio = n as f64 / kn.max(1) as f64;
    outcome(
        n >= 100_000 && ratio >= 10.0 && secs < 30.0,
        format!("n={n} kernel={kn} ratio={ratio:.1} {secs:.2}s"),
    )
}

fn monotone_and_deterministic() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..20u64 {
        let n = 150 + 20 * i as usize;
        let g = graph(n, &oracle::gnp(n, 8.0 / n as f64, 80_000 + i));
        let config = SolverConfig {
            mu: 50,
            population: 20,
            pool: 4,
            time_limit: Duration::from_secs(120),
            seed: i,
            ..SolverConfig::default()
        };
        let run = || {
            let mut sizes = Vec::new();
            let best = solve(&g, &config, |imp| sizes.push(imp.size)).unwrap().best;
            (format_solution(&best.vertices), sizes)
        };
        let (a, sizes_a) = run();
        let (b, sizes_b) = run();
        if !sizes_a.windows(2).all(|w| w[0] < w[1]) || a != b || sizes_a != sizes_b {
            failures.push(i);
        }
    }
    outcome(failures.is_empty(), format!("20 instances, failing: {failures:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("kernel exactness", kernel_exactness),
        ("reconstruction", reconstruction),
        ("end-to-end optimality", end_to_end),
        ("reduction-solvable families", reduction_solvable),
        ("local optimality", local_optimality),
        ("separator validity", separator_validity),
        ("perturbation law", perturbation_law),
        ("kernel shrinkage", kernel_shrinkage),
        ("monotonicity and determinism", monotone_and_deterministic),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.pass;
        println!("{} criterion {} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
