//! Recursive reduce-and-evolve driver.
//!
//! Each level kernelizes its input graph exactly, evolves an independent
//! set on the kernel, fixes the lowest-degree fraction of that solution,
//! deletes the fixed vertices with their neighbors and recurses on the
//! rest. Levels are kept as an explicit frame stack so any kernel solution
//! found deep down can be lifted back to the input graph.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::evolution::{derive_seed, evolve, EvolveConfig};
use crate::graph::{Graph, SubgraphMap, VertexSet};
use crate::local_search::SearchState;
use crate::partition::separator_pool;
use crate::reductions::{kernelize, Kernel, ReductionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("cannot select vertices from an empty solution")]
    EmptySolution,
    #[error("reconstruction failed at level {level}: {reason}")]
    ConsistencyFailure { level: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub mu: usize,
    pub lambda_fraction: f64,
    pub time_limit: Duration,
    pub seed: u64,
    pub population: usize,
    pub epsilon: f64,
    pub pool: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mu: 1000,
            lambda_fraction: 0.1,
            time_limit: Duration::from_secs(60),
            seed: 0,
            population: 50,
            epsilon: 0.25,
            pool: 16,
        }
    }
}

/// A completed level: its exact kernel, the solution vertices fixed in it
/// (kernel ids), and the map from the next level's input into the kernel.
#[derive(Clone, Debug)]
pub struct RecursionFrame {
    pub kernel: Kernel,
    pub fixed: VertexSet,
    pub next_map: SubgraphMap,
    /// Solution size contributed by all shallower levels.
    pub gamma: usize,
}

impl RecursionFrame {
    pub fn theta(&self) -> usize {
        self.kernel.theta
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BestSolution {
    pub vertices: VertexSet,
    pub size: usize,
    pub found_at: f64,
    /// Recursion depth at which it was found, starting at 1. Zero marks
    /// the greedy fallback.
    pub level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Improvement {
    pub t_seconds: f64,
    pub size: usize,
    pub level: usize,
}

/// Run statistics beyond the solution itself.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub best: BestSolution,
    pub first_kernel_size: usize,
    pub first_kernel_edges: usize,
    pub first_theta: usize,
    pub levels: usize,
}

/// `max(1, ⌊fraction·|I|⌋)` vertices of `solution` with smallest degree in
/// `kernel`, ties broken at random.
pub fn select_fix_set<R: Rng>(
    kernel: &Graph,
    solution: &VertexSet,
    lambda_fraction: f64,
    rng: &mut R,
) -> Result<VertexSet, SolverError> {
    if solution.is_empty() {
        return Err(SolverError::EmptySolution);
    }
    let lambda = ((lambda_fraction * solution.len() as f64 + 1e-9).floor() as usize).clamp(1, solution.len());
    let mut keyed: Vec<(usize, u64, usize)> = solution
        .iter()
        .map(|v| (kernel.degree(v), rng.gen(), v))
        .collect();
    keyed.select_nth_unstable(lambda - 1);
    Ok(VertexSet::from_vertices(
        kernel.num_vertices(),
        keyed[..lambda].iter().map(|&(_, _, v)| v),
    ))
}

/// Removes `N[fixed]` from `kernel`; returns the next input graph and its
/// map into the kernel.
pub fn apply_inexact_reduction(kernel: &Graph, fixed: &VertexSet) -> (Graph, SubgraphMap) {
    let mut keep = VertexSet::full(kernel.num_vertices());
    for v in kernel.closed_neighborhood(fixed).iter() {
        keep.remove(v);
    }
    kernel.induced_subgraph(&keep)
}

/// Lifts a solution of the deepest kernel through every frame to the
/// original graph.
pub fn reconstruct_full(
    frames: &[RecursionFrame],
    deepest: &Kernel,
    kernel_solution: &VertexSet,
) -> Result<VertexSet, SolverError> {
    let fail = |level: usize, e: ReductionError| SolverError::ConsistencyFailure {
        level,
        reason: e.to_string(),
    };
    let mut current = deepest
        .restore_solution(kernel_solution)
        .map_err(|e| fail(frames.len() + 1, e))?;
    let mut expected = kernel_solution.len() + deepest.theta;
    for (depth, frame) in frames.iter().enumerate().rev() {
        if current.len() != expected {
            return Err(SolverError::ConsistencyFailure {
                level: depth + 2,
                reason: format!("restored {} vertices, expected {expected}", current.len()),
            });
        }
        let mut lifted = frame.next_map.lift(&current);
        lifted.union_with(&frame.fixed);
        expected += frame.fixed.len() + frame.kernel.theta;
        current = frame.kernel.restore_solution(&lifted).map_err(|e| fail(depth + 1, e))?;
    }
    if current.len() != expected {
        return Err(SolverError::ConsistencyFailure {
            level: 1,
            reason: format!("restored {} vertices, expected {expected}", current.len()),
        });
    }
    Ok(current)
}

fn greedy_solution(g: &Graph, seed: u64) -> VertexSet {
    let mut state = SearchState::new(g, seed);
    state.greedy_maximalize(None);
    state.into_solution()
}

fn assert_valid(g: &Graph, best: &BestSolution) {
    assert!(
        g.is_independent_set(&best.vertices),
        "solver produced a dependent set"
    );
    assert_eq!(best.size, best.vertices.len());
}

/// Full reduce-evolve-recurse run. `on_improve` is called for every strict
/// improvement of the global best (not for the greedy fallback).
pub fn solve(
    g: &Graph,
    config: &SolverConfig,
    mut on_improve: impl FnMut(Improvement),
) -> Result<SolveReport, SolverError> {
    let start = Instant::now();
    let deadline = start + config.time_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let fallback = greedy_solution(g, config.seed);
    let mut best = BestSolution {
        size: fallback.len(),
        vertices: fallback,
        found_at: 0.0,
        level: 0,
    };
    let mut frames: Vec<RecursionFrame> = Vec::new();
    let mut input = g.clone();
    let mut gamma = 0;
    let mut first = None;

    loop {
        let level = frames.len() + 1;
        let kernel = kernelize(&input);
        first.get_or_insert((kernel.graph.num_vertices(), kernel.graph.num_edges(), kernel.theta));
        let offset = gamma + kernel.theta;

        let mut error = None;
        let mut offer = |best: &mut BestSolution, solution: &VertexSet| {
            let size = offset + solution.len();
            let provisional = best.level == 0;
            if size < best.size || (size == best.size && !provisional) || error.is_some() {
                return;
            }
            match reconstruct_full(&frames, &kernel, solution) {
                Ok(vertices) => {
                    let t = start.elapsed().as_secs_f64();
                    *best = BestSolution {
                        size: vertices.len(),
                        vertices,
                        found_at: t,
                        level,
                    };
                    on_improve(Improvement {
                        t_seconds: t,
                        size: best.size,
                        level,
                    });
                }
                Err(e) => error = Some(e),
            }
        };

        if kernel.graph.num_vertices() == 0 {
            offer(&mut best, &VertexSet::new(0));
            if let Some(e) = error {
                return Err(e);
            }
            break;
        }

        let level_seed = derive_seed(config.seed, level as u64);
        let pool = separator_pool(&kernel.graph, config.epsilon, config.pool, level_seed);
        let evolve_config = EvolveConfig {
            population: config.population,
            mu: config.mu,
            seed: derive_seed(level_seed, 1),
            deadline: Some(deadline),
        };
        let outcome = evolve(&kernel.graph, &pool, &evolve_config, |ind| {
            offer(&mut best, &ind.solution)
        });
        if let Some(e) = error {
            return Err(e);
        }
        if Instant::now() >= deadline {
            break;
        }

        let fixed = match select_fix_set(&kernel.graph, &outcome.best.solution, config.lambda_fraction, &mut rng) {
            Ok(u) => u,
            Err(SolverError::EmptySolution) => {
                let v = kernel.graph.vertices().min_by_key(|&v| kernel.graph.degree(v)).unwrap();
                VertexSet::from_vertices(kernel.graph.num_vertices(), [v])
            }
            Err(e) => return Err(e),
        };
        let (next, next_map) = apply_inexact_reduction(&kernel.graph, &fixed);
        let level_gamma = gamma;
        gamma += kernel.theta + fixed.len();
        frames.push(RecursionFrame {
            kernel,
            fixed,
            next_map,
            gamma: level_gamma,
        });
        input = next;
    }

    assert_valid(g, &best);
    let (first_kernel_size, first_kernel_edges, first_theta) = first.unwrap_or_default();
    Ok(SolveReport {
        best,
        first_kernel_size,
        first_kernel_edges,
        first_theta,
        levels: frames.len() + 1,
    })
}

/// Evolutionary search on the whole graph, no reductions.
pub fn solve_evomis(g: &Graph, config: &SolverConfig, mut on_improve: impl FnMut(Improvement)) -> BestSolution {
    let start = Instant::now();
    let pool = separator_pool(g, config.epsilon, config.pool, derive_seed(config.seed, 1));
    let evolve_config = EvolveConfig {
        population: config.population,
        mu: config.mu,
        seed: derive_seed(config.seed, 2),
        deadline: Some(start + config.time_limit),
    };
    let mut found_at = 0.0;
    let outcome = evolve(g, &pool, &evolve_config, |ind| {
        found_at = start.elapsed().as_secs_f64();
        on_improve(Improvement {
            t_seconds: found_at,
            size: ind.fitness,
            level: 1,
        });
    });
    let best = BestSolution {
        size: outcome.best.fitness,
        vertices: outcome.best.solution,
        found_at,
        level: 1,
    };
    assert_valid(g, &best);
    best
}

/// Iterated local search alone. Stops at the time limit or after `mu`
/// consecutive rounds without improvement.
pub fn solve_arw(g: &Graph, config: &SolverConfig, mut on_improve: impl FnMut(Improvement)) -> BestSolution {
    let start = Instant::now();
    let deadline = start + config.time_limit;
    let mut state = SearchState::new(g, config.seed);
    state.greedy_maximalize(None);
    state.local_search_pass();
    let mut best = BestSolution {
        vertices: state.solution().clone(),
        size: state.size(),
        found_at: start.elapsed().as_secs_f64(),
        level: 1,
    };
    on_improve(Improvement {
        t_seconds: best.found_at,
        size: best.size,
        level: 1,
    });
    let mut stale = 0;
    while stale < config.mu && Instant::now() < deadline && g.num_vertices() > 0 {
        state.perturb();
        state.local_search_pass();
        if state.size() > best.size {
            let t = start.elapsed().as_secs_f64();
            best = BestSolution {
                vertices: state.solution().clone(),
                size: state.size(),
                found_at: t,
                level: 1,
            };
            on_improve(Improvement {
                t_seconds: t,
                size: best.size,
                level: 1,
            });
            stale = 0;
        } else {
            stale += 1;
        }
    }
    assert_valid(g, &best);
    best
}
