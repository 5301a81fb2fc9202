//! Full solver run on a METIS file given as argument, or on a random graph.

use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redumis::graph::load_metis;
use redumis::solver::{solve, SolverConfig};
use redumis::Graph;

fn random_graph(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .filter(|(u, v)| u != v)
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => load_metis(&std::fs::read_to_string(path)?)?,
        None => random_graph(5000, 15000, 3),
    };
    let config = SolverConfig {
        mu: 200,
        population: 20,
        time_limit: Duration::from_secs(20),
        ..SolverConfig::default()
    };
    let report = solve(&g, &config, |_| {})?;
    println!(
        "n={} m={} first kernel n={} best={} found at level {} after {:.2}s ({} levels)",
        g.num_vertices(),
        g.num_edges(),
        report.first_kernel_size,
        report.best.size,
        report.best.level,
        report.best.found_at,
        report.levels
    );
    Ok(())
}
