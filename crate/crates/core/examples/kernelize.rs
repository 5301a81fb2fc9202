//! Exact kernelization of a caterpillar with a few extra cycles: most of
//! the graph is taken apart by the reduction rules.

use redumis::reductions::{kernelize, KernelState};
use redumis::{Graph, VertexSet};

fn main() {
    // Spine 0..40, one leaf per spine vertex, plus a 5-cycle.
    let mut edges: Vec<(usize, usize)> = (1..40).map(|i| (i - 1, i)).collect();
    edges.extend((0..40).map(|i| (i, 40 + i)));
    edges.extend((0..5).map(|i| (80 + i, 80 + (i + 1) % 5)));
    let g = Graph::from_edge_list(85, &edges).unwrap();

    let mut state = KernelState::new(&g);
    let mut counts = std::collections::BTreeMap::new();
    while let Some(rule) = state.step() {
        *counts.entry(format!("{rule:?}")).or_insert(0) += 1;
    }
    println!("rule sweeps: {counts:?}");

    let kernel = kernelize(&g);
    println!(
        "input n={} kernel n={} m={} theta={}",
        g.num_vertices(),
        kernel.graph.num_vertices(),
        kernel.graph.num_edges(),
        kernel.theta
    );
    let solution = kernel.restore_solution(&VertexSet::new(kernel.graph.num_vertices())).unwrap();
    assert!(g.is_independent_set(&solution));
    println!("restored independent set of size {}", solution.len());
}
