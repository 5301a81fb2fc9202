//! Balanced bipartitions and 2-way node separators.
//!
//! Blocks are grown by BFS from a random seed vertex and polished with
//! FM-style boundary refinement. A node separator is then obtained by
//! covering the cut edges greedily with vertices of highest cut degree.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

const FM_PASSES: usize = 6;
const FM_STALL_MOVES: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} is in more than one part")]
    Overlap(usize),
    #[error("vertex {0} is in no part")]
    Uncovered(usize),
    #[error("edge {0}-{1} joins the two blocks")]
    CrossEdge(usize, usize),
    #[error("block of size {size} exceeds the bound {bound}")]
    Imbalanced { size: usize, bound: usize },
    #[error("decomposition is over {got} vertices, graph has {expected}")]
    WrongUniverse { expected: usize, got: usize },
}

/// `V = block1 ∪ block2 ∪ separator` with no edge between the blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatorDecomposition {
    pub block1: VertexSet,
    pub block2: VertexSet,
    pub separator: VertexSet,
    pub epsilon: f64,
}

/// `(1 + ε)·⌈n/2⌉`, rounded down.
pub fn max_block_size(n: usize, epsilon: f64) -> usize {
    ((1.0 + epsilon) * n.div_ceil(2) as f64 + 1e-9).floor() as usize
}

impl SeparatorDecomposition {
    pub fn validate(&self, g: &Graph) -> Result<(), PartitionError> {
        let n = g.num_vertices();
        for part in [&self.block1, &self.block2, &self.separator] {
            if part.universe() != n {
                return Err(PartitionError::WrongUniverse {
                    expected: n,
                    got: part.universe(),
                });
            }
        }
        for v in g.vertices() {
            let hits = [&self.block1, &self.block2, &self.separator]
                .iter()
                .filter(|p| p.contains(v))
                .count();
            match hits {
                0 => return Err(PartitionError::Uncovered(v)),
                1 => {}
                _ => return Err(PartitionError::Overlap(v)),
            }
        }
        for v in self.block1.iter() {
            if let Some(&w) = g.neighbors(v).iter().find(|&&w| self.block2.contains(w)) {
                return Err(PartitionError::CrossEdge(v, w));
            }
        }
        if n > 2 {
            let bound = max_block_size(n, self.epsilon);
            let size = self.block1.len().max(self.block2.len());
            if size > bound {
                return Err(PartitionError::Imbalanced { size, bound });
            }
        }
        Ok(())
    }
}

/// Two blocks covering `V` with `max |V_i| ≤ (1+ε)⌈|V|/2⌉` (waived for
/// `|V| ≤ 2`), cut minimized heuristically.
pub fn bipartition(g: &Graph, epsilon: f64, seed: u64) -> (VertexSet, VertexSet) {
    let n = g.num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n <= 2 {
        return (
            VertexSet::from_vertices(n, (0..n).take(1)),
            VertexSet::from_vertices(n, (1..n).take(1)),
        );
    }
    let side = grow_region(g, n / 2, &mut rng);
    let side = fm_refine(g, side, max_block_size(n, epsilon), &mut rng);
    let b1 = VertexSet::from_vertices(n, (0..n).filter(|&v| !side[v]));
    let b2 = VertexSet::from_vertices(n, (0..n).filter(|&v| side[v]));
    (b1, b2)
}

/// BFS from random starts until `target` vertices are on side `false`;
/// returns `side[v] == true` for the rest.
fn grow_region(g: &Graph, target: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = g.num_vertices();
    let mut side = vec![true; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut grown = 0;
    let mut queue = VecDeque::new();
    let mut seen = vec![false; n];
    let mut starts = order.into_iter();
    while grown < target {
        let v = match queue.pop_front() {
            Some(v) => v,
            None => match starts.by_ref().find(|&s| !seen[s]) {
                Some(s) => {
                    seen[s] = true;
                    s
                }
                None => break,
            },
        };
        side[v] = false;
        grown += 1;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    side
}

fn fm_refine(g: &Graph, mut side: Vec<bool>, max_block: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let n = g.num_vertices();
    let gain_of = |side: &[bool], v: usize| -> i64 {
        let ext = g.neighbors(v).iter().filter(|&&w| side[w] != side[v]).count() as i64;
        ext - (g.degree(v) as i64 - ext)
    };
    for _ in 0..FM_PASSES {
        let mut sizes = [0usize; 2];
        for &s in &side {
            sizes[s as usize] += 1;
        }
        let mut gain: Vec<i64> = (0..n).map(|v| gain_of(&side, v)).collect();
        let mut locked = vec![false; n];
        let mut heaps: [BinaryHeap<(i64, u32, usize)>; 2] = [BinaryHeap::new(), BinaryHeap::new()];
        for v in 0..n {
            if g.neighbors(v).iter().any(|&w| side[w] != side[v]) {
                heaps[side[v] as usize].push((gain[v], rng.gen(), v));
            }
        }
        let mut moves: Vec<usize> = Vec::new();
        let mut delta = 0i64;
        let mut best_delta = 0i64;
        let mut best_len = 0usize;
        loop {
            let mut pick: Option<(i64, usize, usize)> = None;
            for from in 0..2 {
                let to = 1 - from;
                if sizes[to] + 1 > max_block || sizes[from] <= 1 {
                    continue;
                }
                while let Some(&(gv, _, v)) = heaps[from].peek() {
                    if locked[v] || side[v] as usize != from || gain[v] != gv {
                        heaps[from].pop();
                    } else {
                        break;
                    }
                }
                if let Some(&(gv, _, v)) = heaps[from].peek() {
                    if pick.is_none_or(|(pg, _, _)| gv > pg) {
                        pick = Some((gv, from, v));
                    }
                }
            }
            let Some((gv, from, v)) = pick else { break };
            heaps[from].pop();
            side[v] = !side[v];
            locked[v] = true;
            sizes[from] -= 1;
            sizes[1 - from] += 1;
            delta += gv;
            moves.push(v);
            for &w in g.neighbors(v) {
                if !locked[w] {
                    gain[w] = gain_of(&side, w);
                    heaps[side[w] as usize].push((gain[w], rng.gen(), w));
                }
            }
            if delta > best_delta {
                best_delta = delta;
                best_len = moves.len();
            } else if moves.len() - best_len > FM_STALL_MOVES {
                break;
            }
        }
        for &v in &moves[best_len..] {
            side[v] = !side[v];
        }
        if best_delta == 0 {
            break;
        }
    }
    side
}

/// Node separator from a bipartition: cut edges are covered greedily and
/// the cover vertices move into the separator.
pub fn node_separator(g: &Graph, epsilon: f64, seed: u64) -> SeparatorDecomposition {
    let n = g.num_vertices();
    let (mut b1, mut b2) = bipartition(g, epsilon, seed);
    let in_b1: Vec<bool> = (0..n).map(|v| b1.contains(v)).collect();
    let mut cut_degree: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| in_b1[w] != in_b1[v]).count())
        .collect();
    let mut separator = VertexSet::new(n);

    // Priority: cut degree, then "sits in the larger block", then degree,
    // then lowest id. Entries are re-validated when popped.
    let key = |v: usize, cut: &[usize], b1: &VertexSet, b2: &VertexSet| {
        let (mine, other) = if in_b1[v] { (b1.len(), b2.len()) } else { (b2.len(), b1.len()) };
        (cut[v], mine >= other, g.degree(v), Reverse(v))
    };
    let mut heap: BinaryHeap<_> = (0..n)
        .filter(|&v| cut_degree[v] > 0)
        .map(|v| key(v, &cut_degree, &b1, &b2))
        .collect();
    while let Some(top) = heap.pop() {
        let v = top.3 .0;
        if separator.contains(v) || cut_degree[v] == 0 {
            continue;
        }
        let fresh = key(v, &cut_degree, &b1, &b2);
        if fresh != top {
            heap.push(fresh);
            continue;
        }
        separator.insert(v);
        if in_b1[v] {
            b1.remove(v);
        } else {
            b2.remove(v);
        }
        cut_degree[v] = 0;
        for &w in g.neighbors(v) {
            if in_b1[w] != in_b1[v] && !separator.contains(w) {
                cut_degree[w] -= 1;
                if cut_degree[w] > 0 {
                    heap.push(key(w, &cut_degree, &b1, &b2));
                }
            }
        }
    }
    SeparatorDecomposition {
        block1: b1,
        block2: b2,
        separator,
        epsilon,
    }
}

/// `count` decompositions from consecutive seeds.
pub fn separator_pool(g: &Graph, epsilon: f64, count: usize, seed: u64) -> Vec<SeparatorDecomposition> {
    (0..count as u64)
        .map(|i| node_separator(g, epsilon, seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15))))
        .collect()
}
