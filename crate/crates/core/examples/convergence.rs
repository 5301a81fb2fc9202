//! Record improvements over time and print them as the CSV the command
//! line tool writes.

use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redumis::cli::format_convergence;
use redumis::solver::{solve, SolverConfig};
use redumis::Graph;

fn main() {
    let n = 3000;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let edges: Vec<(usize, usize)> = (0..4 * n)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .filter(|(u, v)| u != v)
        .collect();
    let g = Graph::from_edge_list(n, &edges).unwrap();
    let config = SolverConfig {
        mu: 100,
        population: 20,
        time_limit: Duration::from_secs(10),
        ..SolverConfig::default()
    };
    let mut log = Vec::new();
    solve(&g, &config, |imp| log.push(imp)).unwrap();
    print!("{}", format_convergence(&log).unwrap());
}
