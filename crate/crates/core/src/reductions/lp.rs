//! Half-integral LP relaxation of independent set via bipartite matching.
//!
//! Each vertex `v` gets a left copy `v_L` and a right copy `v_R`; every edge
//! `{u, v}` becomes `u_L v_R` and `v_L u_R`. A minimum vertex cover of this
//! double cover (König, from a maximum matching) halves into an optimal
//! fractional vertex cover, whose complement is an optimal LP solution with
//! values in {0, 1/2, 1}.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpValue {
    Zero,
    Half,
    One,
}

/// Maximum matching in a bipartite graph whose left side has `adj.len()`
/// vertices and right side `right_len`. Returns `(match_left, match_right)`
/// with `usize::MAX` for unmatched vertices.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_len: usize) -> (Vec<usize>, Vec<usize>) {
    let left_len = adj.len();
    let mut match_left = vec![NONE; left_len];
    let mut match_right = vec![NONE; right_len];
    let mut dist = vec![usize::MAX; left_len];
    let mut queue = Vec::with_capacity(left_len);
    let mut next_edge = vec![0usize; left_len];

    // Greedy warm start.
    for u in 0..left_len {
        if let Some(&v) = adj[u].iter().find(|&&v| match_right[v] == NONE) {
            match_left[u] = v;
            match_right[v] = u;
        }
    }

    loop {
        // BFS layering from free left vertices.
        queue.clear();
        for u in 0..left_len {
            if match_left[u] == NONE {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &adj[u] {
                let w = match_right[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            break;
        }

        // Iterative DFS along the layering.
        next_edge.iter_mut().for_each(|e| *e = 0);
        let mut stack: Vec<usize> = Vec::new();
        let mut via: Vec<usize> = Vec::new();
        for root in 0..left_len {
            if match_left[root] != NONE {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&x) = stack.last() {
                if next_edge[x] < adj[x].len() {
                    let v = adj[x][next_edge[x]];
                    next_edge[x] += 1;
                    let w = match_right[v];
                    if w == NONE {
                        via.push(v);
                        for (&l, &r) in stack.iter().zip(via.iter()) {
                            match_left[l] = r;
                            match_right[r] = l;
                        }
                        break;
                    } else if dist[w] == dist[x] + 1 {
                        via.push(v);
                        stack.push(w);
                    }
                } else {
                    dist[x] = usize::MAX;
                    stack.pop();
                    via.pop();
                }
            }
        }
    }
    (match_left, match_right)
}

/// Optimal half-integral solution of
/// `max Σ x_v  s.t.  x_u + x_v ≤ 1 on edges, x ≥ 0`
/// for the graph with adjacency lists `adj` over `0..adj.len()`.
pub fn half_integral_solution(adj: &[Vec<usize>]) -> Vec<LpValue> {
    let n = adj.len();
    let (_, match_right) = hopcroft_karp(adj, n);
    let match_left = {
        let mut ml = vec![NONE; n];
        for (r, &l) in match_right.iter().enumerate() {
            if l != NONE {
                ml[l] = r;
            }
        }
        ml
    };

    // Vertices reachable from free left vertices by alternating paths.
    let mut reach_left = vec![false; n];
    let mut reach_right = vec![false; n];
    let mut queue: Vec<usize> = (0..n).filter(|&u| match_left[u] == NONE).collect();
    for &u in &queue {
        reach_left[u] = true;
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &v in &adj[u] {
            if reach_right[v] {
                continue;
            }
            reach_right[v] = true;
            let w = match_right[v];
            if w != NONE && !reach_left[w] {
                reach_left[w] = true;
                queue.push(w);
            }
        }
    }

    // König cover: (L \ Z) ∪ (R ∩ Z). x_v = 1 - (|cover ∩ {v_L, v_R}|) / 2.
    (0..n)
        .map(|v| match (reach_left[v], reach_right[v]) {
            (true, false) => LpValue::One,
            (false, true) => LpValue::Zero,
            _ => LpValue::Half,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn lp_value(values: &[LpValue]) -> f64 {
        values
            .iter()
            .map(|v| match v {
                LpValue::Zero => 0.0,
                LpValue::Half => 0.5,
                LpValue::One => 1.0,
            })
            .sum()
    }

    // Brute-force LP optimum over half-integral assignments (LP optimum is
    // always attained at one).
    fn brute_half_integral_optimum(n: usize, edges: &[(usize, usize)]) -> f64 {
        let mut best = 0.0f64;
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut x = vec![0u8; n];
            for xi in x.iter_mut() {
                *xi = (c % 3) as u8;
                c /= 3;
            }
            if edges.iter().all(|&(u, v)| x[u] + x[v] <= 2) {
                best = best.max(x.iter().map(|&t| t as f64 / 2.0).sum());
            }
        }
        best
    }

    #[test]
    fn four_cycle_is_all_half() {
        let adj = adjacency(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(half_integral_solution(&adj).iter().all(|&v| v == LpValue::Half));
    }

    #[test]
    fn star_leaves_are_one() {
        let adj = adjacency(4, &[(0, 1), (0, 2), (0, 3)]);
        let x = half_integral_solution(&adj);
        assert_eq!(x, vec![LpValue::Zero, LpValue::One, LpValue::One, LpValue::One]);
    }

    #[test]
    fn edgeless_is_all_one() {
        let adj = vec![Vec::new(); 5];
        assert!(half_integral_solution(&adj).iter().all(|&v| v == LpValue::One));
    }

    #[test]
    fn matching_size_on_path() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![2]];
        let (ml, _) = hopcroft_karp(&adj, 3);
        assert!(ml.iter().all(|&m| m != NONE));
    }

    proptest! {
        #[test]
        fn feasible_and_optimal(n in 1usize..8, pairs in proptest::collection::vec((0usize..8, 0usize..8), 0..16)) {
            let mut edges: Vec<_> = pairs.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
            edges.sort_unstable();
            edges.dedup();
            let adj = adjacency(n, &edges);
            let x = half_integral_solution(&adj);
            for &(u, v) in &edges {
                prop_assert!(!(x[u] == LpValue::One && x[v] != LpValue::Zero));
                prop_assert!(!(x[u] == LpValue::Half && x[v] == LpValue::One));
            }
            prop_assert!((lp_value(&x) - brute_half_integral_optimum(n, &edges)).abs() < 1e-9);
        }
    }
}
