//! Balanced node separator of a grid.

use redumis::partition::node_separator;
use redumis::Graph;

fn main() {
    let k = 30;
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            let v = r * k + c;
            if c + 1 < k {
                edges.push((v, v + 1));
            }
            if r + 1 < k {
                edges.push((v, v + k));
            }
        }
    }
    let g = Graph::from_edge_list(k * k, &edges).unwrap();
    let d = node_separator(&g, 0.25, 3);
    d.validate(&g).unwrap();
    println!(
        "|V1|={} |V2|={} |S|={} (grid side {k})",
        d.block1.len(),
        d.block2.len(),
        d.separator.len()
    );
}
