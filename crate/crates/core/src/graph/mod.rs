//! Immutable undirected graphs in compressed adjacency form, vertex subsets,
//! induced subgraphs and file I/O.

mod io;
mod vertex_set;

pub use io::{load_edge_list, load_metis, read_edge_list, read_metis, write_metis};
pub use vertex_set::VertexSet;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: neighbor id {id} out of range [1, {n}]")]
    NeighborOutOfRange { line: usize, id: usize, n: usize },
    #[error("edge endpoint {id} out of range for {n} vertices")]
    EndpointOutOfRange { id: usize, n: usize },
    #[error("asymmetric adjacency: {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: usize, v: usize },
    #[error("self-loop on vertex {v}")]
    SelfLoop { v: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are strictly sorted and symmetric.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list. Duplicate and reversed
    /// pairs are merged; self-loops are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::EndpointOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adjacency))
    }

    /// Sorts and deduplicates each list. The caller guarantees symmetry and
    /// the absence of self-loops.
    pub(crate) fn from_adjacency_unchecked(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let g = Graph { offsets, neighbors };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.num_vertices()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `keep`, relabelled densely in ascending id order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, SubgraphMap) {
        let map = SubgraphMap::from_kept(self.num_vertices(), keep.iter());
        let adjacency = map
            .backward
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| map.to_sub(w))
                    .collect()
            })
            .collect();
        (Graph::from_adjacency_unchecked(adjacency), map)
    }

    pub fn is_independent_set(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.neighbors(v).iter().all(|&w| !set.contains(w)))
    }

    /// `U ∪ N(U)`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for v in set.iter() {
            for &w in self.neighbors(v) {
                out.insert(w);
            }
        }
        out
    }

    pub fn check_invariants(&self) -> Result<(), GraphError> {
        for u in self.vertices() {
            let list = self.neighbors(u);
            for pair in list.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(GraphError::Parse {
                        line: 0,
                        reason: format!("neighbor list of {u} not strictly sorted"),
                    });
                }
            }
            for &v in list {
                if v == u {
                    return Err(GraphError::SelfLoop { v: u });
                }
                if v >= self.num_vertices() {
                    return Err(GraphError::EndpointOutOfRange {
                        id: v,
                        n: self.num_vertices(),
                    });
                }
                if !self.has_edge(v, u) {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.num_vertices())
            .field("m", &self.num_edges())
            .finish()
    }
}

/// Bijection between the kept vertices of a parent graph and `0..k` in a
/// subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphMap {
    forward: Vec<Option<usize>>,
    backward: Vec<usize>,
}

impl SubgraphMap {
    pub fn from_kept<I: IntoIterator<Item = usize>>(parent_len: usize, kept: I) -> Self {
        let mut forward = vec![None; parent_len];
        let mut backward = Vec::new();
        for v in kept {
            debug_assert!(forward[v].is_none());
            forward[v] = Some(backward.len());
            backward.push(v);
        }
        SubgraphMap { forward, backward }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_kept(n, 0..n)
    }

    pub fn to_sub(&self, parent: usize) -> Option<usize> {
        self.forward.get(parent).copied().flatten()
    }

    pub fn to_parent(&self, sub: usize) -> usize {
        self.backward[sub]
    }

    pub fn sub_len(&self) -> usize {
        self.backward.len()
    }

    pub fn parent_len(&self) -> usize {
        self.forward.len()
    }

    /// Lifts a subgraph vertex set into parent ids.
    pub fn lift(&self, sub: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.parent_len(), sub.iter().map(|v| self.backward[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn edge_list_dedups_reversed_pairs() {
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn edge_list_edgeless() {
        let g = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn cycle_is_two_regular() {
        let g = cycle(5);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        assert_eq!(g.num_edges(), 5);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange { id: 2, n: 2 })
        ));
        assert!(matches!(
            Graph::from_edge_list(2, &[(1, 1)]),
            Err(GraphError::SelfLoop { v: 1 })
        ));
    }

    #[test]
    fn induced_cycle_minus_vertex_is_path() {
        let (sub, map) = cycle(4).induced_subgraph(&VertexSet::from_vertices(4, [0, 1, 2]));
        assert_eq!(sub, path(3));
        assert_eq!(map.to_sub(3), None);
        assert_eq!(map.to_parent(2), 2);
    }

    #[test]
    fn induced_alternate_path_vertices_are_edgeless() {
        let (sub, _) = path(5).induced_subgraph(&VertexSet::from_vertices(5, [0, 2, 4]));
        assert_eq!(sub.num_vertices(), 3);
        assert_eq!(sub.num_edges(), 0);
    }

    #[test]
    fn induced_all_is_identity() {
        let g = cycle(6);
        let (sub, map) = g.induced_subgraph(&VertexSet::full(6));
        assert_eq!(sub, g);
        assert_eq!(map, SubgraphMap::identity(6));
    }

    #[test]
    fn independence_on_small_graphs() {
        let p3 = path(3);
        assert!(p3.is_independent_set(&VertexSet::from_vertices(3, [0, 2])));
        assert!(!p3.is_independent_set(&VertexSet::from_vertices(3, [0, 1])));
        // Every 3-subset of C5 contains two consecutive vertices.
        let c5 = cycle(5);
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    assert!(!c5.is_independent_set(&VertexSet::from_vertices(5, [a, b, c])));
                }
            }
        }
    }

    #[test]
    fn closed_neighborhoods() {
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(
            star.closed_neighborhood(&VertexSet::from_vertices(5, [0])).len(),
            5
        );
        assert!(star.closed_neighborhood(&VertexSet::new(5)).is_empty());
        assert_eq!(
            path(5)
                .closed_neighborhood(&VertexSet::from_vertices(5, [2]))
                .to_vec(),
            vec![1, 2, 3]
        );
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
                let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                Graph::from_edge_list(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn construction_invariants(g in arb_graph(40)) {
            prop_assert!(g.check_invariants().is_ok());
            let total: usize = g.vertices().map(|v| g.degree(v)).sum();
            prop_assert_eq!(total, 2 * g.num_edges());
        }

        #[test]
        fn induced_edge_count_matches_naive(g in arb_graph(30), mask in any::<u32>()) {
            let n = g.num_vertices();
            let keep = VertexSet::from_vertices(n, (0..n).filter(|v| mask >> v & 1 == 1));
            let (sub, map) = g.induced_subgraph(&keep);
            let mut naive = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if keep.contains(u) && keep.contains(v) && g.has_edge(u, v) {
                        naive += 1;
                    }
                }
            }
            prop_assert_eq!(sub.num_edges(), naive);
            for s in 0..map.sub_len() {
                prop_assert_eq!(map.to_sub(map.to_parent(s)), Some(s));
            }
        }

        #[test]
        fn independence_matches_pairwise(g in arb_graph(64), mask in any::<u64>()) {
            let n = g.num_vertices();
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let mut pairwise = true;
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if g.has_edge(u, v) {
                        pairwise = false;
                    }
                }
            }
            prop_assert_eq!(g.is_independent_set(&VertexSet::from_vertices(n, set)), pairwise);
        }
    }
}
