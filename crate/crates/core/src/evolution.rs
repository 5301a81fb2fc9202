//! Steady-state evolutionary search over independent sets.
//!
//! Individuals are maximal, locally optimal independent sets. Each round
//! picks two parents by tournament, exchanges whole blocks of a node
//! separator between them, repairs the child with greedy insertions and
//! local search, mutates it by one perturbation, and lets it replace the
//! most similar member that is not better than it.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::local_search::SearchState;
use crate::partition::{PartitionError, SeparatorDecomposition};

/// Population members are re-verified after each eviction up to this size
/// in debug builds.
const DEBUG_CHECK_MAX_N: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvolutionError {
    #[error("invalid separator decomposition: {0}")]
    InvalidDecomposition(#[from] PartitionError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub solution: VertexSet,
    pub fitness: usize,
}

impl Individual {
    pub fn new(solution: VertexSet) -> Self {
        let fitness = solution.len();
        Individual { solution, fitness }
    }
}

#[derive(Clone, Debug)]
pub struct Population {
    members: Vec<Individual>,
    unsuccessful_streak: usize,
}

/// Splits one seed into independent per-purpose streams.
pub(crate) fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Randomized min-degree greedy followed by one local search pass per
/// member. `capacity` is raised to 2 if smaller.
pub fn init_population(g: &Graph, capacity: usize, seed: u64) -> Population {
    let members = (0..capacity.max(2) as u64)
        .map(|i| {
            let mut state = SearchState::new(g, derive_seed(seed, i));
            state.greedy_maximalize_random_ties(None);
            state.local_search_pass();
            Individual::new(state.into_solution())
        })
        .collect();
    Population {
        members,
        unsuccessful_streak: 0,
    }
}

impl Population {
    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn capacity(&self) -> usize {
        self.members.len()
    }

    pub fn unsuccessful_streak(&self) -> usize {
        self.unsuccessful_streak
    }

    /// Index of the fittest member, lowest index on ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate() {
            if m.fitness > self.members[best].fitness {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.best_index()]
    }

    /// Binary tournament: fitter of two uniform draws, coin flip on ties.
    pub fn tournament<R: Rng>(&self, rng: &mut R) -> usize {
        let a = rng.gen_range(0..self.members.len());
        let b = rng.gen_range(0..self.members.len());
        let (fa, fb) = (self.members[a].fitness, self.members[b].fitness);
        if fa > fb || (fa == fb && rng.gen_bool(0.5)) {
            a
        } else {
            b
        }
    }

    /// Two independent tournaments; the parents may be the same member.
    pub fn select_parents<R: Rng>(&self, rng: &mut R) -> (&Individual, &Individual) {
        let a = self.tournament(rng);
        let b = self.tournament(rng);
        (&self.members[a], &self.members[b])
    }

    /// Replaces the member closest to `child` (symmetric difference) among
    /// those with fitness at most the child's, lowest index on ties.
    /// Returns the replaced index, or `None` if the child was rejected.
    pub fn evict(&mut self, child: Individual) -> Option<usize> {
        let target = self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.fitness <= child.fitness)
            .min_by_key(|&(i, m)| (m.solution.symmetric_difference_len(&child.solution), i))
            .map(|(i, _)| i)?;
        self.members[target] = child;
        Some(target)
    }

    fn debug_check(&self, g: &Graph) {
        if cfg!(debug_assertions) && g.num_vertices() <= DEBUG_CHECK_MAX_N {
            for m in &self.members {
                assert!(g.is_independent_set(&m.solution), "member not independent");
                assert!(is_maximal(g, &m.solution), "member not maximal");
                assert_eq!(m.fitness, m.solution.len());
            }
        }
    }
}

pub fn is_maximal(g: &Graph, set: &VertexSet) -> bool {
    g.vertices()
        .all(|v| set.contains(v) || g.neighbors(v).iter().any(|&w| set.contains(w)))
}

/// `(V1 ∩ a) ∪ (V2 ∩ b)`: independent whenever `a`, `b` are and `d` is a
/// valid separator.
pub fn exchange(d: &SeparatorDecomposition, a: &VertexSet, b: &VertexSet) -> VertexSet {
    let mut child = VertexSet::new(a.universe());
    for v in a.iter().filter(|&v| d.block1.contains(v)) {
        child.insert(v);
    }
    for v in b.iter().filter(|&v| d.block2.contains(v)) {
        child.insert(v);
    }
    child
}

/// Builds both children of `i1` and `i2` across `d`, completes and
/// locally optimizes each, and returns the larger (the first on ties).
pub fn combine_separator(
    g: &Graph,
    i1: &Individual,
    i2: &Individual,
    d: &SeparatorDecomposition,
    seed: u64,
) -> Result<Individual, EvolutionError> {
    d.validate(g)?;
    Ok(combine_unchecked(g, i1, i2, d, seed))
}

fn combine_unchecked(
    g: &Graph,
    i1: &Individual,
    i2: &Individual,
    d: &SeparatorDecomposition,
    seed: u64,
) -> Individual {
    let separator: Vec<usize> = d.separator.iter().collect();
    let first = repair(g, exchange(d, &i1.solution, &i2.solution), &separator, derive_seed(seed, 0));
    let second = repair(g, exchange(d, &i2.solution, &i1.solution), &separator, derive_seed(seed, 1));
    if second.fitness > first.fitness {
        second
    } else {
        first
    }
}

fn repair(g: &Graph, child: VertexSet, separator: &[usize], seed: u64) -> Individual {
    let mut state = SearchState::from_solution(g, &child, seed);
    state.greedy_maximalize(Some(separator));
    state.greedy_maximalize(None);
    let solution = state.into_solution();
    // Local search starts only around the separator.
    let seeds: Vec<usize> = solution
        .iter()
        .filter(|&v| separator_touches(separator, v, g))
        .collect();
    let mut state = SearchState::with_candidates(g, &solution, &seeds, derive_seed(seed, 2));
    state.local_search_pass();
    Individual::new(state.into_solution())
}

fn separator_touches(separator: &[usize], v: usize, g: &Graph) -> bool {
    separator.binary_search(&v).is_ok()
        || g.neighbors(v).iter().any(|w| separator.binary_search(w).is_ok())
}

/// One perturbation followed by local search; keeps `child` if the result
/// is smaller.
pub fn mutate(g: &Graph, child: Individual, seed: u64) -> Individual {
    let mut state = SearchState::from_solution(g, &child.solution, seed);
    state.perturb();
    state.local_search_pass();
    if state.size() >= child.fitness {
        Individual::new(state.into_solution())
    } else {
        child
    }
}

#[derive(Clone, Debug)]
pub struct EvolveConfig {
    pub population: usize,
    pub mu: usize,
    pub seed: u64,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug)]
pub struct EvolveOutcome {
    pub best: Individual,
    pub combines: usize,
    pub improvements: usize,
}

/// Runs the evolutionary loop until `mu` consecutive combines fail to beat
/// the best member or the deadline passes. Decompositions in `pool` must be
/// valid for `g` and are used round-robin. `on_improve` sees the initial
/// best and every strict improvement.
pub fn evolve(
    g: &Graph,
    pool: &[SeparatorDecomposition],
    config: &EvolveConfig,
    mut on_improve: impl FnMut(&Individual),
) -> EvolveOutcome {
    let mut population = init_population(g, config.population, config.seed);
    let mut best = population.best().clone();
    on_improve(&best);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, u64::MAX));
    let mut combines = 0;
    let mut improvements = 0;
    let expired = || config.deadline.is_some_and(|d| Instant::now() >= d);
    while !pool.is_empty() && population.unsuccessful_streak < config.mu && !expired() {
        let (a, b) = population.select_parents(&mut rng);
        let d = &pool[combines % pool.len()];
        let child = combine_unchecked(g, a, b, d, rng.gen());
        let child = mutate(g, child, rng.gen());
        combines += 1;
        if child.fitness > best.fitness {
            best = child.clone();
            improvements += 1;
            population.unsuccessful_streak = 0;
            on_improve(&best);
        } else {
            population.unsuccessful_streak += 1;
        }
        population.evict(child);
        population.debug_check(g);
    }
    EvolveOutcome {
        best,
        combines,
        improvements,
    }
}
