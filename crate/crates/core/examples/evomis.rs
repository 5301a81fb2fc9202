//! The evolutionary algorithm alone, on a random sparse graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redumis::evolution::{evolve, init_population, EvolveConfig};
use redumis::partition::separator_pool;
use redumis::Graph;

fn main() {
    let n = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let edges: Vec<(usize, usize)> = (0..3 * n)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .filter(|(u, v)| u != v)
        .collect();
    let g = Graph::from_edge_list(n, &edges).unwrap();

    let initial = init_population(&g, 20, 1).best().fitness;
    let pool = separator_pool(&g, 0.25, 8, 1);
    let config = EvolveConfig {
        population: 20,
        mu: 200,
        seed: 1,
        deadline: None,
    };
    let outcome = evolve(&g, &pool, &config, |best| println!("best {}", best.fitness));
    println!(
        "initial best {initial}, final {} after {} combines",
        outcome.best.fitness, outcome.combines
    );
}
