//! Iterated local search with (1,2)-swaps and forced-insertion
//! perturbation.
//!
//! The central structure is the tightness counter: `tightness(v)` is the
//! number of solution neighbors of `v`. A (1,2)-swap at solution vertex `v`
//! removes `v` and inserts two non-adjacent neighbors of tightness 1. Only
//! solution vertices on the candidate worklist are examined; a vertex is
//! queued again only when its neighborhood changes in a way that can create
//! a swap.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};

/// Random samples drawn per forced vertex during perturbation.
pub const DEFAULT_CANDIDATE_SAMPLES: usize = 4;

/// Debug builds recount tightness after public operations up to this size.
const DEBUG_CHECK_MAX_N: usize = 10_000;

#[derive(Clone)]
pub struct SearchState<'g> {
    graph: &'g Graph,
    solution: VertexSet,
    tightness: Vec<usize>,
    candidates: VecDeque<usize>,
    queued: Vec<bool>,
    out_since: Vec<u64>,
    clock: u64,
    rng: ChaCha8Rng,
    candidate_samples: usize,
    // Scratch for greedy and swap detection.
    residual: Vec<usize>,
    stamp: Vec<u32>,
    stamp_now: u32,
}

impl<'g> SearchState<'g> {
    /// Empty solution; not maximal until [`greedy_maximalize`](Self::greedy_maximalize).
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        let n = graph.num_vertices();
        SearchState {
            graph,
            solution: VertexSet::new(n),
            tightness: vec![0; n],
            candidates: VecDeque::new(),
            queued: vec![false; n],
            out_since: vec![0; n],
            clock: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            candidate_samples: DEFAULT_CANDIDATE_SAMPLES,
            residual: vec![0; n],
            stamp: vec![0; n],
            stamp_now: 0,
        }
    }

    /// Starts from an independent `solution`, queueing every solution vertex
    /// as a swap candidate.
    pub fn from_solution(graph: &'g Graph, solution: &VertexSet, seed: u64) -> Self {
        let seeds: Vec<usize> = solution.iter().collect();
        Self::with_candidates(graph, solution, &seeds, seed)
    }

    /// Starts from an independent `solution` but queues only `seeds`.
    pub fn with_candidates(graph: &'g Graph, solution: &VertexSet, seeds: &[usize], seed: u64) -> Self {
        debug_assert!(graph.is_independent_set(solution));
        let mut state = Self::new(graph, seed);
        for v in solution.iter() {
            state.solution.insert(v);
            for &w in graph.neighbors(v) {
                state.tightness[w] += 1;
            }
        }
        for &v in seeds {
            state.enqueue(v);
        }
        state
    }

    pub fn set_candidate_samples(&mut self, samples: usize) {
        self.candidate_samples = samples.max(1);
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn solution(&self) -> &VertexSet {
        &self.solution
    }

    pub fn into_solution(self) -> VertexSet {
        self.solution
    }

    pub fn size(&self) -> usize {
        self.solution.len()
    }

    pub fn tightness(&self, v: usize) -> usize {
        self.tightness[v]
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn is_free(&self, v: usize) -> bool {
        self.tightness[v] == 0 && !self.solution.contains(v)
    }

    fn enqueue(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.candidates.push_back(v);
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp_now = self.stamp_now.wrapping_add(1);
        if self.stamp_now == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.stamp_now = 1;
        }
        self.stamp_now
    }

    fn insert(&mut self, v: usize) {
        debug_assert!(self.is_free(v));
        self.solution.insert(v);
        for &w in self.graph.neighbors(v) {
            self.tightness[w] += 1;
        }
        self.enqueue(v);
    }

    fn remove(&mut self, v: usize) {
        debug_assert!(self.solution.contains(v));
        self.solution.remove(v);
        self.out_since[v] = self.clock;
        let graph = self.graph;
        for &w in graph.neighbors(v) {
            self.tightness[w] -= 1;
            if self.tightness[w] == 1 && !self.solution.contains(w) {
                self.enqueue_solution_neighbor(w);
            }
        }
        if self.tightness[v] == 1 {
            self.enqueue_solution_neighbor(v);
        }
    }

    fn enqueue_solution_neighbor(&mut self, w: usize) {
        if let Some(&s) = self.graph.neighbors(w).iter().find(|&&s| self.solution.contains(s)) {
            self.enqueue(s);
        }
    }

    /// Inserts free vertices (from `restrict` if given) until none is left,
    /// always taking one with the fewest free neighbors, ties by lowest id.
    /// Returns the number of vertices added.
    pub fn greedy_maximalize(&mut self, restrict: Option<&[usize]>) -> usize {
        let added = self.greedy(restrict, false);
        self.debug_check(restrict.is_none());
        added
    }

    /// As [`greedy_maximalize`](Self::greedy_maximalize) with random
    /// tie-breaking.
    pub fn greedy_maximalize_random_ties(&mut self, restrict: Option<&[usize]>) -> usize {
        let added = self.greedy(restrict, true);
        self.debug_check(restrict.is_none());
        added
    }

    fn greedy(&mut self, restrict: Option<&[usize]>, random_ties: bool) -> usize {
        let graph = self.graph;
        let stamp = self.next_stamp();
        let pool: Vec<usize> = match restrict {
            Some(list) => list.iter().copied().filter(|&v| self.is_free(v)).collect(),
            None => graph.vertices().filter(|&v| self.is_free(v)).collect(),
        };
        let mut heap = BinaryHeap::with_capacity(pool.len());
        for &v in &pool {
            if self.stamp[v] == stamp {
                continue;
            }
            self.stamp[v] = stamp;
            let r = graph.neighbors(v).iter().filter(|&&w| self.is_free(w)).count();
            self.residual[v] = r;
            let tie = if random_ties { self.rng.gen::<u64>() } else { v as u64 };
            heap.push(Reverse((r, tie, v)));
        }
        let mut added = 0;
        while let Some(Reverse((r, _, v))) = heap.pop() {
            if !self.is_free(v) || self.residual[v] != r {
                continue;
            }
            // Neighbors of v stop being free; their free neighbors lose one.
            for &w in graph.neighbors(v) {
                if !self.is_free(w) {
                    continue;
                }
                for &z in graph.neighbors(w) {
                    if z != v && self.stamp[z] == stamp && self.is_free(z) {
                        self.residual[z] -= 1;
                        let tie = if random_ties { self.rng.gen::<u64>() } else { z as u64 };
                        heap.push(Reverse((self.residual[z], tie, z)));
                    }
                }
            }
            self.insert(v);
            added += 1;
        }
        added
    }

    /// Two non-adjacent 1-tight neighbors of solution vertex `v`, if any.
    pub fn find_one_two_swap(&mut self, v: usize) -> Option<(usize, usize)> {
        debug_assert!(self.solution.contains(v));
        let graph = self.graph;
        let one_tight: Vec<usize> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&x| self.tightness[x] == 1 && !self.solution.contains(x))
            .collect();
        if one_tight.len() < 2 {
            return None;
        }
        for (i, &x) in one_tight.iter().enumerate() {
            let stamp = self.next_stamp();
            for &w in graph.neighbors(x) {
                self.stamp[w] = stamp;
            }
            if let Some(&y) = one_tight[i + 1..].iter().find(|&&y| self.stamp[y] != stamp) {
                return Some((x, y));
            }
        }
        None
    }

    /// Drains the candidate worklist, applying (1,2)-swaps until none
    /// exists. Returns the number of swaps.
    pub fn local_search_pass(&mut self) -> usize {
        let graph = self.graph;
        let mut swaps = 0;
        while let Some(v) = self.candidates.pop_front() {
            self.queued[v] = false;
            if !self.solution.contains(v) {
                continue;
            }
            if let Some((x, y)) = self.find_one_two_swap(v) {
                self.remove(v);
                self.insert(x);
                self.insert(y);
                swaps += 1;
                self.greedy(Some(graph.neighbors(v)), false);
            }
        }
        self.debug_check(true);
        swaps
    }

    /// Forced-vertex count: `P(f = k) = 2^-k` for `k ≥ 1`, capped at `|V|`.
    pub fn sample_force_count(&mut self) -> usize {
        let cap = self.graph.num_vertices().max(1);
        let mut f = 1;
        while f < cap && self.rng.gen_bool(0.5) {
            f += 1;
        }
        f
    }

    /// Forces `v` into the solution, dropping its solution neighbors, then
    /// re-maximalizes around them. No-op if `v` is already in.
    pub fn force_insert(&mut self, v: usize) {
        if self.solution.contains(v) {
            return;
        }
        let removed = self.force_raw(v);
        let around = self.neighborhood_of(&removed);
        self.greedy(Some(&around), false);
        self.debug_check(true);
    }

    fn force_raw(&mut self, v: usize) -> Vec<usize> {
        let removed: Vec<usize> = self
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.solution.contains(w))
            .collect();
        for &w in &removed {
            self.remove(w);
        }
        self.insert(v);
        removed
    }

    fn neighborhood_of(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter()
            .flat_map(|&w| self.graph.neighbors(w).iter().copied().chain(std::iter::once(w)))
            .collect()
    }

    /// Picks the non-solution vertex that has been out the longest among
    /// a few random samples, avoiding `blocked` neighborhoods.
    fn pick_forced(&mut self, blocked: &[usize]) -> Option<usize> {
        let n = self.graph.num_vertices();
        let mut best: Option<usize> = None;
        let mut drawn = 0;
        let mut attempts = 0;
        while drawn < self.candidate_samples && attempts < 8 * self.candidate_samples {
            attempts += 1;
            let v = self.rng.gen_range(0..n);
            if self.solution.contains(v)
                || blocked.iter().any(|&b| b == v || self.graph.has_edge(b, v))
            {
                continue;
            }
            drawn += 1;
            if best.is_none_or(|b| self.out_since[v] < self.out_since[b]) {
                best = Some(v);
            }
        }
        best
    }

    /// Forces `f` vertices into the solution (see
    /// [`sample_force_count`](Self::sample_force_count)) and re-maximalizes.
    pub fn perturb(&mut self) {
        if self.graph.num_vertices() == 0 {
            return;
        }
        self.clock += 1;
        let f = self.sample_force_count();
        let mut forced = Vec::with_capacity(f);
        let mut removed = Vec::new();
        for _ in 0..f {
            match self.pick_forced(&forced) {
                Some(v) => {
                    removed.extend(self.force_raw(v));
                    forced.push(v);
                }
                None => break,
            }
        }
        let around = self.neighborhood_of(&removed);
        self.greedy(Some(&around), false);
        self.debug_check(true);
    }

    /// Alternates perturbation and local search for `rounds` iterations and
    /// returns the largest solution seen (the current one for 0 rounds).
    pub fn arw_iterate(&mut self, rounds: usize) -> VertexSet {
        let mut best = self.solution.clone();
        for _ in 0..rounds {
            self.perturb();
            self.local_search_pass();
            if self.solution.len() > best.len() {
                best = self.solution.clone();
            }
        }
        best
    }

    /// Tightness recount and independence, plus maximality if `maximal`.
    pub fn check_invariants(&self, maximal: bool) -> Result<(), String> {
        let g = self.graph;
        for v in g.vertices() {
            let count = g.neighbors(v).iter().filter(|&&w| self.solution.contains(w)).count();
            if count != self.tightness[v] {
                return Err(format!("tightness of {v} is {} but recount gives {count}", self.tightness[v]));
            }
            if self.solution.contains(v) && count != 0 {
                return Err(format!("solution vertex {v} has a solution neighbor"));
            }
            if maximal && !self.solution.contains(v) && count == 0 {
                return Err(format!("vertex {v} is free; solution not maximal"));
            }
        }
        Ok(())
    }

    fn debug_check(&self, maximal: bool) {
        if cfg!(debug_assertions) && self.graph.num_vertices() <= DEBUG_CHECK_MAX_N {
            if let Err(e) = self.check_invariants(maximal) {
                panic!("local search invariant broken: {e}");
            }
        }
    }
}
