//! Parse a METIS graph (from a path argument, or a built-in Petersen graph)
//! and print its basic statistics.

use redumis::graph::{load_metis, write_metis};

const PETERSEN: &str = "% Petersen graph
10 15
2 5 6
1 3 7
2 4 8
3 5 9
1 4 10
1 8 9
2 9 10
3 6 10
4 6 7
5 7 8
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => PETERSEN.to_string(),
    };
    let g = load_metis(&text)?;
    let max_degree = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
    println!("n={} m={} max_degree={max_degree}", g.num_vertices(), g.num_edges());

    let mut out = Vec::new();
    write_metis(&g, &mut out)?;
    assert_eq!(load_metis(std::str::from_utf8(&out)?)?, g);
    println!("round trip ok");
    Ok(())
}
