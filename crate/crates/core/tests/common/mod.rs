//! Independent oracles and instance generators shared by unit and
//! integration tests. Everything here works on plain adjacency lists so it
//! shares no code path with the library under test.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Adjacency = Vec<Vec<usize>>;

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adjacency {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    adj
}

fn masks(adj: &[Vec<usize>]) -> Vec<u64> {
    assert!(adj.len() <= 64, "brute force limited to 64 vertices");
    adj.iter()
        .map(|list| list.iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn mis_rec(nbr: &[u64], mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    let v = mask.trailing_zeros() as usize;
    let without = mask & !(1 << v);
    if nbr[v] & mask == 0 {
        return 1 + mis_rec(nbr, without);
    }
    let skip = mis_rec(nbr, without);
    let take = 1 + mis_rec(nbr, without & !nbr[v]);
    skip.max(take)
}

/// α by exhaustive branching.
pub fn alpha(adj: &[Vec<usize>]) -> usize {
    let nbr = masks(adj);
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    mis_rec(&nbr, all)
}

/// Every maximum independent set, as sorted vertex lists.
pub fn all_maximum_independent_sets(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let target = alpha(adj);
    let nbr = masks(adj);
    let mut out = Vec::new();
    fn rec(nbr: &[u64], v: usize, n: usize, chosen: u64, size: usize, target: usize, out: &mut Vec<Vec<usize>>) {
        if size + (n - v) < target {
            return;
        }
        if v == n {
            if size == target {
                out.push((0..n).filter(|&i| chosen >> i & 1 == 1).collect());
            }
            return;
        }
        if nbr[v] & chosen == 0 {
            rec(nbr, v + 1, n, chosen | 1 << v, size + 1, target, out);
        }
        rec(nbr, v + 1, n, chosen, size, target, out);
    }
    rec(&nbr, 0, adj.len(), 0, 0, target, &mut out);
    out
}

pub fn is_independent(adj: &[Vec<usize>], set: &[usize]) -> bool {
    set.iter()
        .all(|&u| set.iter().all(|&v| u == v || !adj[u].contains(&v)))
}

/// α of a forest by the include/exclude tree DP.
pub fn forest_alpha(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut visited = vec![false; n];
    let mut total = 0;
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // Iterative post-order.
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; 0];
        parent.resize(n, usize::MAX);
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut take = vec![1usize; n];
        let mut skip = vec![0usize; n];
        for &v in order.iter().rev() {
            let p = parent[v];
            if p != usize::MAX {
                take[p] += skip[v];
                skip[p] += take[v].max(skip[v]);
            }
        }
        total += take[root].max(skip[root]);
    }
    total
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random forest: each vertex attaches to an earlier one with probability
/// `attach`, otherwise starts a new tree.
pub fn random_forest(n: usize, attach: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..n)
        .filter_map(|v| rng.gen_bool(attach).then(|| (rng.gen_range(0..v), v)))
        .collect()
}

pub fn cycle(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

pub fn path(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

pub fn grid(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    edges
}

/// Exhaustive check that no (1,2)-swap exists: no solution vertex has two
/// non-adjacent neighbors whose only solution neighbor is that vertex.
pub fn has_one_two_swap(adj: &[Vec<usize>], in_solution: &[bool]) -> bool {
    let tight = |x: usize| adj[x].iter().filter(|&&w| in_solution[w]).count();
    for v in 0..adj.len() {
        if !in_solution[v] {
            continue;
        }
        let one_tight: Vec<usize> = adj[v].iter().copied().filter(|&x| tight(x) == 1).collect();
        for i in 0..one_tight.len() {
            for j in i + 1..one_tight.len() {
                if !adj[one_tight[i]].contains(&one_tight[j]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Road-like instance: a `side × side` grid of junctions, a diagonal in
/// some cells, a fraction of streets dropped and every kept street
/// subdivided into a chain of `0..=max_chain` interior vertices.
/// Returns `(n, edges)`.
pub fn road_like(side: usize, drop: f64, max_chain: usize, seed: u64) -> (usize, Vec<(usize, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = side * side;
    let mut edges = Vec::new();
    let mut streets = grid(side, side);
    for r in 0..side - 1 {
        for c in 0..side - 1 {
            if rng.gen_bool(0.3) {
                streets.push((r * side + c, (r + 1) * side + c + 1));
            }
        }
    }
    for (u, v) in streets {
        if rng.gen_bool(drop) {
            continue;
        }
        let mut prev = u;
        for _ in 0..rng.gen_range(0..=max_chain) {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, v));
    }
    (n, edges)
}
