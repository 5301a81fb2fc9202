//! Greedy start, (1,2)-swap local search, then iterated perturbation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redumis::local_search::SearchState;
use redumis::Graph;

fn main() {
    let n = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let edges: Vec<(usize, usize)> = (0..4 * n)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .filter(|(u, v)| u != v)
        .collect();
    let g = Graph::from_edge_list(n, &edges).unwrap();

    let mut state = SearchState::new(&g, 42);
    state.greedy_maximalize(None);
    println!("greedy: {}", state.size());
    let swaps = state.local_search_pass();
    println!("after {swaps} swaps: {}", state.size());
    let best = state.arw_iterate(5000);
    assert!(g.is_independent_set(&best));
    println!("after 5000 perturbation rounds: {}", best.len());
}
