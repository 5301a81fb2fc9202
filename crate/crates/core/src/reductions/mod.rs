//! Exact kernelization for maximum independent set.
//!
//! [`KernelState`] keeps a working copy of the adjacency (the base [`Graph`]
//! is never touched) together with an undo log and the offset `theta`, the
//! number of solution vertices already guaranteed by the reductions. Rules
//! are applied cheapest first, restarting from the top after any change,
//! until none applies. For the resulting kernel `K`,
//! `α(G) = α(K) + theta`, and any independent set of `K` can be lifted back
//! to an independent set of `G` that is larger by exactly `theta`.

pub mod lp;

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, SubgraphMap, VertexSet};
use lp::LpValue;

/// Funnel detection inspects pairs inside `N(v)`; very high degree vertices
/// are skipped.
const FUNNEL_MAX_DEGREE: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("kernel solution is not an independent set of the kernel")]
    InvalidKernelSolution,
    #[error("kernel solution has universe {got}, kernel has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Isolated,
    Pendant,
    Fold,
    Lp,
    Unconfined,
    Twin,
    Alternative,
    Packing,
}

impl Rule {
    /// Application order used by [`KernelState::step`].
    pub const ORDER: [Rule; 8] = [
        Rule::Isolated,
        Rule::Pendant,
        Rule::Fold,
        Rule::Lp,
        Rule::Unconfined,
        Rule::Twin,
        Rule::Alternative,
        Rule::Packing,
    ];
}

/// One reversible reduction event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UndoRecord {
    /// Vertex goes into the solution; its neighbors at that time are out.
    IncludeVertex(usize),
    /// Vertex is dropped; some maximum solution avoids it.
    ExcludeVertex(usize),
    /// `center` had exactly the non-adjacent neighbors `left` and `right`;
    /// all three were contracted into `merged`.
    Fold {
        center: usize,
        left: usize,
        right: usize,
        merged: usize,
    },
    /// Degree-3 twins with an edgeless common neighborhood were replaced by
    /// `gadget`, adjacent to their second neighborhood.
    TwinFold {
        twins: [usize; 2],
        neighbors: [usize; 3],
        gadget: usize,
    },
    /// `a` and `b` are alternatives. `a_side` is `N(a) \ N(b)`; if any of it
    /// ends up in the solution, `b` is taken, otherwise `a`.
    AlternativeReduce {
        a: Vec<usize>,
        b: Vec<usize>,
        a_side: Vec<usize>,
    },
    /// A zero-bound packing constraint forced these vertices in.
    PackingInclude(Vec<usize>),
}

/// `Σ_{v ∈ variables} x_v ≤ bound`, where `x_v = 1` means `v` is *not* in
/// the solution. Every maximum independent set of the current graph
/// satisfies each active constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingConstraint {
    pub variables: Vec<usize>,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fate {
    Alive,
    In,
    Out,
    /// Removed by a rule whose decision is deferred to reconstruction.
    Merged,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelState {
    base_n: usize,
    adj: Vec<Vec<usize>>,
    fate: Vec<Fate>,
    num_alive: usize,
    theta: usize,
    log: Vec<UndoRecord>,
    packing: Vec<Option<PackingConstraint>>,
    constraints_of: Vec<Vec<usize>>,
    packing_conflicts: usize,
}

impl KernelState {
    pub fn new(g: &Graph) -> Self {
        let n = g.num_vertices();
        KernelState {
            base_n: n,
            adj: g.vertices().map(|v| g.neighbors(v).to_vec()).collect(),
            fate: vec![Fate::Alive; n],
            num_alive: n,
            theta: 0,
            log: Vec::new(),
            packing: Vec::new(),
            constraints_of: vec![Vec::new(); n],
            packing_conflicts: 0,
        }
    }

    pub fn base_len(&self) -> usize {
        self.base_n
    }

    /// Number of working ids, including synthetic gadget vertices.
    pub fn working_len(&self) -> usize {
        self.adj.len()
    }

    pub fn num_alive(&self) -> usize {
        self.num_alive
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn undo_log(&self) -> &[UndoRecord] {
        &self.log
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.fate[v] == Fate::Alive
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(move |&v| self.is_alive(v))
    }

    /// Vertices decided into the solution so far (working ids).
    pub fn forced_in(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.adj.len(),
            (0..self.adj.len()).filter(|&v| self.fate[v] == Fate::In),
        )
    }

    /// Zero-bound packing constraints that contained an edge and were
    /// dropped.
    pub fn packing_conflicts(&self) -> usize {
        self.packing_conflicts
    }

    pub fn packing_constraints(&self) -> impl Iterator<Item = &PackingConstraint> {
        self.packing.iter().flatten()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
        if let Err(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].insert(pos, u);
        }
    }

    fn detach(&mut self, v: usize, fate: Fate) {
        debug_assert!(self.is_alive(v));
        let nbrs = std::mem::take(&mut self.adj[v]);
        for &w in &nbrs {
            if let Ok(pos) = self.adj[w].binary_search(&v) {
                self.adj[w].remove(pos);
            }
        }
        self.fate[v] = fate;
        self.num_alive -= 1;
    }

    fn new_vertex(&mut self, nbrs: Vec<usize>) -> usize {
        let id = self.adj.len();
        for &w in &nbrs {
            let pos = self.adj[w].binary_search(&id).unwrap_err();
            self.adj[w].insert(pos, id);
        }
        self.adj.push(nbrs);
        self.fate.push(Fate::Alive);
        self.constraints_of.push(Vec::new());
        self.num_alive += 1;
        id
    }

    /// Puts `v` in the solution and drops its neighbors. Not logged.
    fn take_in(&mut self, v: usize) {
        let nbrs = self.adj[v].clone();
        self.detach(v, Fate::In);
        self.theta += 1;
        self.packing_on_in(v);
        for w in nbrs {
            self.take_out(w);
        }
    }

    fn take_out(&mut self, v: usize) {
        self.detach(v, Fate::Out);
        self.packing_on_out(v);
    }

    fn take_merged(&mut self, v: usize) {
        self.detach(v, Fate::Merged);
        for c in std::mem::take(&mut self.constraints_of[v]) {
            self.packing[c] = None;
        }
    }

    fn packing_on_in(&mut self, v: usize) {
        for c in std::mem::take(&mut self.constraints_of[v]) {
            if let Some(pc) = self.packing[c].as_mut() {
                pc.variables.retain(|&x| x != v);
                if pc.variables.len() <= pc.bound {
                    self.packing[c] = None;
                }
            }
        }
    }

    fn packing_on_out(&mut self, v: usize) {
        for c in std::mem::take(&mut self.constraints_of[v]) {
            if let Some(pc) = self.packing[c].as_mut() {
                pc.variables.retain(|&x| x != v);
                if pc.bound == 0 {
                    // Every maximum solution should have contained v.
                    self.packing_conflicts += 1;
                    self.packing[c] = None;
                } else {
                    pc.bound -= 1;
                    if pc.variables.is_empty() {
                        self.packing[c] = None;
                    }
                }
            }
        }
    }

    /// Registers `Σ_{v ∈ variables} x_v ≤ bound`. The caller asserts that
    /// every maximum independent set of the current graph satisfies it.
    /// Dead variables are ignored; vacuous constraints are not stored.
    pub fn add_packing_constraint(&mut self, variables: Vec<usize>, bound: usize) {
        let mut variables: Vec<usize> = variables.into_iter().filter(|&v| self.is_alive(v)).collect();
        variables.sort_unstable();
        variables.dedup();
        if variables.is_empty() || variables.len() <= bound {
            return;
        }
        let id = self.packing.len();
        for &v in &variables {
            self.constraints_of[v].push(id);
        }
        self.packing.push(Some(PackingConstraint { variables, bound }));
    }

    // ------------------------------------------------------------------
    // Rules. Each returns whether the state changed.
    // ------------------------------------------------------------------

    pub fn apply(&mut self, rule: Rule) -> bool {
        match rule {
            Rule::Isolated => self.reduce_isolated(),
            Rule::Pendant => self.reduce_pendant(),
            Rule::Fold => self.reduce_fold(),
            Rule::Lp => self.reduce_lp(),
            Rule::Unconfined => self.reduce_unconfined(),
            Rule::Twin => self.reduce_twin(),
            Rule::Alternative => self.reduce_alternative(),
            Rule::Packing => self.reduce_packing_simple(),
        }
    }

    /// Degree-0 vertices go straight into the solution.
    pub fn reduce_isolated(&mut self) -> bool {
        let mut changed = false;
        for v in 0..self.adj.len() {
            if self.is_alive(v) && self.adj[v].is_empty() {
                self.take_in(v);
                self.log.push(UndoRecord::IncludeVertex(v));
                changed = true;
            }
        }
        changed
    }

    /// Degree-1 vertices are in some maximum solution. Cascades through
    /// pendants (and isolated vertices) created along the way.
    pub fn reduce_pendant(&mut self) -> bool {
        let mut work: Vec<usize> = self
            .alive_vertices()
            .filter(|&v| self.adj[v].len() <= 1)
            .collect();
        work.reverse();
        let mut changed = false;
        while let Some(v) = work.pop() {
            if !self.is_alive(v) || self.adj[v].len() > 1 {
                continue;
            }
            let mut second = Vec::new();
            for &u in &self.adj[v] {
                second.extend(self.adj[u].iter().copied().filter(|&w| w != v));
            }
            self.take_in(v);
            self.log.push(UndoRecord::IncludeVertex(v));
            changed = true;
            for w in second.into_iter().rev() {
                if self.is_alive(w) && self.adj[w].len() <= 1 {
                    work.push(w);
                }
            }
        }
        changed
    }

    /// Contracts a degree-2 vertex with non-adjacent neighbors `u`, `w`
    /// together with them into one new vertex adjacent to `N(u) ∪ N(w)`.
    pub fn reduce_fold(&mut self) -> bool {
        let mut changed = false;
        let mut v = 0;
        while v < self.adj.len() {
            if self.is_alive(v) && self.adj[v].len() == 2 {
                let (u, w) = (self.adj[v][0], self.adj[v][1]);
                if !self.has_edge(u, w) {
                    let mut nbrs: Vec<usize> = self.adj[u]
                        .iter()
                        .chain(self.adj[w].iter())
                        .copied()
                        .filter(|&x| x != v)
                        .collect();
                    nbrs.sort_unstable();
                    nbrs.dedup();
                    self.take_merged(u);
                    self.take_merged(v);
                    self.take_merged(w);
                    let merged = self.new_vertex(nbrs);
                    self.theta += 1;
                    self.log.push(UndoRecord::Fold {
                        center: v,
                        left: u,
                        right: w,
                        merged,
                    });
                    changed = true;
                }
            }
            v += 1;
        }
        changed
    }

    /// Nemhauser–Trotter: vertices at 1 in an optimal half-integral LP
    /// solution are included, vertices at 0 excluded.
    pub fn reduce_lp(&mut self) -> bool {
        let alive: Vec<usize> = self.alive_vertices().collect();
        if alive.is_empty() {
            return false;
        }
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in alive.iter().enumerate() {
            index[v] = i;
        }
        let compact: Vec<Vec<usize>> = alive
            .iter()
            .map(|&v| self.adj[v].iter().map(|&w| index[w]).collect())
            .collect();
        let values = lp::half_integral_solution(&compact);
        let mut changed = false;
        for (i, &v) in alive.iter().enumerate() {
            if values[i] == LpValue::One && self.is_alive(v) {
                self.take_in(v);
                self.log.push(UndoRecord::IncludeVertex(v));
                changed = true;
            }
        }
        for (i, &v) in alive.iter().enumerate() {
            if values[i] == LpValue::Zero && self.is_alive(v) {
                self.take_out(v);
                self.log.push(UndoRecord::ExcludeVertex(v));
                changed = true;
            }
        }
        changed
    }

    /// Confinement search from `v`: grows `S = {v}` by single-vertex
    /// extensions and reports whether `v` is unconfined.
    pub fn is_unconfined(&self, v: usize) -> bool {
        if self.adj[v].is_empty() {
            return false;
        }
        let mut in_s: HashMap<usize, ()> = HashMap::new();
        // |N(u) ∩ S| for u ∈ N(S).
        let mut hits: HashMap<usize, usize> = HashMap::new();
        let mut frontier: Vec<usize> = Vec::new();
        let add_to_s = |x: usize,
                            in_s: &mut HashMap<usize, ()>,
                            hits: &mut HashMap<usize, usize>,
                            frontier: &mut Vec<usize>| {
            in_s.insert(x, ());
            hits.remove(&x);
            for &w in &self.adj[x] {
                let h = hits.entry(w).or_insert_with(|| {
                    frontier.push(w);
                    0
                });
                *h += 1;
            }
        };
        add_to_s(v, &mut in_s, &mut hits, &mut frontier);
        loop {
            let in_closed = |x: usize, in_s: &HashMap<usize, ()>, hits: &HashMap<usize, usize>| {
                in_s.contains_key(&x) || hits.contains_key(&x)
            };
            let mut best: Option<(usize, usize, Option<usize>)> = None;
            for &u in &frontier {
                if in_s.contains_key(&u) || hits.get(&u) != Some(&1) {
                    continue;
                }
                let limit = best.map_or(usize::MAX, |b| b.0);
                let mut outside = 0;
                let mut witness = None;
                for &w in &self.adj[u] {
                    if !in_closed(w, &in_s, &hits) {
                        outside += 1;
                        witness = Some(w);
                        if outside > limit {
                            break;
                        }
                    }
                }
                let better = match best {
                    None => true,
                    Some((d, id, _)) => outside < d || (outside == d && u < id),
                };
                if better {
                    best = Some((outside, u, witness));
                }
            }
            match best {
                None => return false,
                Some((0, _, _)) => return true,
                Some((1, _, Some(w))) => add_to_s(w, &mut in_s, &mut hits, &mut frontier),
                Some(_) => return false,
            }
        }
    }

    /// Drops unconfined vertices. Each exclusion of `v` registers the
    /// packing constraint "at least one of `N(v)` is in the solution".
    pub fn reduce_unconfined(&mut self) -> bool {
        let mut changed = false;
        for v in 0..self.adj.len() {
            if self.is_alive(v) && self.is_unconfined(v) {
                let nbrs = self.adj[v].clone();
                self.take_out(v);
                self.log.push(UndoRecord::ExcludeVertex(v));
                let bound = nbrs.len() - 1;
                self.add_packing_constraint(nbrs, bound);
                changed = true;
            }
        }
        changed
    }

    /// Degree-3 vertices `u`, `v` with `N(u) = N(v)`.
    pub fn reduce_twin(&mut self) -> bool {
        let mut seen: HashMap<[usize; 3], usize> = HashMap::new();
        let mut changed = false;
        for v in 0..self.adj.len() {
            if !self.is_alive(v) || self.adj[v].len() != 3 {
                continue;
            }
            let key = [self.adj[v][0], self.adj[v][1], self.adj[v][2]];
            let u = match seen.get(&key) {
                Some(&u) if self.is_alive(u) && self.adj[u] == key => u,
                _ => {
                    seen.insert(key, v);
                    continue;
                }
            };
            seen.remove(&key);
            let [a, b, c] = key;
            if self.has_edge(a, b) || self.has_edge(a, c) || self.has_edge(b, c) {
                self.take_in(u);
                self.log.push(UndoRecord::IncludeVertex(u));
                self.take_in(v);
                self.log.push(UndoRecord::IncludeVertex(v));
            } else {
                let mut second: Vec<usize> = key
                    .iter()
                    .flat_map(|&x| self.adj[x].iter().copied())
                    .filter(|&x| x != u && x != v)
                    .collect();
                second.sort_unstable();
                second.dedup();
                for x in [u, v, a, b, c] {
                    self.take_merged(x);
                }
                let gadget = self.new_vertex(second);
                self.theta += 2;
                self.log.push(UndoRecord::TwinFold {
                    twins: [u, v],
                    neighbors: key,
                    gadget,
                });
            }
            changed = true;
        }
        changed
    }

    /// Funnels and chordless 4-cycles ("desks").
    pub fn reduce_alternative(&mut self) -> bool {
        let mut changed = false;
        for v in 0..self.adj.len() {
            if !self.is_alive(v) {
                continue;
            }
            if let Some(u) = self.funnel_partner(v) {
                self.apply_alternative(vec![u], vec![v]);
                changed = true;
                continue;
            }
            if let Some((a, b)) = self.desk_at(v) {
                self.apply_alternative(a, b);
                changed = true;
            }
        }
        changed
    }

    /// Some `u ∈ N(v)` with `N(v) \ {u}` a clique.
    fn funnel_partner(&self, v: usize) -> Option<usize> {
        let nv = &self.adj[v];
        if nv.is_empty() || nv.len() > FUNNEL_MAX_DEGREE {
            return None;
        }
        // Any non-adjacent pair in N(v) must contain u.
        let mut pair = None;
        'outer: for i in 0..nv.len() {
            for j in i + 1..nv.len() {
                if !self.has_edge(nv[i], nv[j]) {
                    pair = Some((nv[i], nv[j]));
                    break 'outer;
                }
            }
        }
        let candidates = match pair {
            None => return Some(nv[0]),
            Some((x, y)) => [x, y],
        };
        candidates.into_iter().find(|&u| {
            let rest: Vec<usize> = nv.iter().copied().filter(|&x| x != u).collect();
            (0..rest.len()).all(|i| (i + 1..rest.len()).all(|j| self.has_edge(rest[i], rest[j])))
        })
    }

    /// A chordless 4-cycle `a1 b1 a2 b2` with all degrees ≥ 3,
    /// `|N(A) \ B| ≤ 2`, `|N(B) \ A| ≤ 2` and `N(A) ∩ N(B) = ∅`.
    fn desk_at(&self, a1: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let deg_ok = |x: usize| (3..=4).contains(&self.adj[x].len());
        if !deg_ok(a1) {
            return None;
        }
        let na1 = &self.adj[a1];
        for i in 0..na1.len() {
            for j in i + 1..na1.len() {
                let (b1, b2) = (na1[i], na1[j]);
                if !deg_ok(b1) || !deg_ok(b2) || self.has_edge(b1, b2) {
                    continue;
                }
                for &a2 in &self.adj[b1] {
                    if a2 == a1 || !deg_ok(a2) || !self.has_edge(b2, a2) || self.has_edge(a1, a2) {
                        continue;
                    }
                    let outer = |p: usize, q: usize, skip: [usize; 2]| {
                        let mut s: Vec<usize> = self.adj[p]
                            .iter()
                            .chain(self.adj[q].iter())
                            .copied()
                            .filter(|x| !skip.contains(x))
                            .collect();
                        s.sort_unstable();
                        s.dedup();
                        s
                    };
                    let na = outer(a1, a2, [b1, b2]);
                    let nb = outer(b1, b2, [a1, a2]);
                    if na.len() <= 2 && nb.len() <= 2 && na.iter().all(|x| nb.binary_search(x).is_err()) {
                        return Some((vec![a1, a2], vec![b1, b2]));
                    }
                }
            }
        }
        None
    }

    fn apply_alternative(&mut self, a: Vec<usize>, b: Vec<usize>) {
        let outer = |side: &[usize], skip: &[usize]| {
            let mut s: Vec<usize> = side
                .iter()
                .flat_map(|&x| self.adj[x].iter().copied())
                .filter(|x| !skip.contains(x))
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let both: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        let na = outer(&a, &both);
        let nb = outer(&b, &both);
        let common: Vec<usize> = na.iter().copied().filter(|x| nb.binary_search(x).is_ok()).collect();
        let a_side: Vec<usize> = na.iter().copied().filter(|x| !common.contains(x)).collect();
        let b_side: Vec<usize> = nb.iter().copied().filter(|x| !common.contains(x)).collect();
        for &x in &both {
            self.take_merged(x);
        }
        for &x in &common {
            self.take_out(x);
        }
        for &x in &a_side {
            for &y in &b_side {
                self.insert_edge(x, y);
            }
        }
        self.theta += a.len();
        self.log.push(UndoRecord::AlternativeReduce { a, b, a_side });
    }

    /// Zero-bound packing constraints whose variables are pairwise
    /// non-adjacent force all of them into the solution.
    pub fn reduce_packing_simple(&mut self) -> bool {
        let mut changed = false;
        for c in 0..self.packing.len() {
            let vars = match &self.packing[c] {
                Some(pc) if pc.bound == 0 => pc.variables.clone(),
                _ => continue,
            };
            debug_assert!(vars.iter().all(|&v| self.is_alive(v)));
            let has_edge = (0..vars.len())
                .any(|i| (i + 1..vars.len()).any(|j| self.has_edge(vars[i], vars[j])));
            if has_edge {
                self.packing_conflicts += 1;
                self.packing[c] = None;
                continue;
            }
            for &v in &vars {
                self.take_in(v);
            }
            self.log.push(UndoRecord::PackingInclude(vars));
            changed = true;
        }
        changed
    }

    /// Applies the first rule in [`Rule::ORDER`] that changes the state.
    pub fn step(&mut self) -> Option<Rule> {
        Rule::ORDER.into_iter().find(|&r| self.apply(r))
    }

    /// Runs [`step`](Self::step) until no rule applies; returns the number
    /// of successful steps.
    pub fn reduce_to_fixpoint(&mut self) -> usize {
        let mut steps = 0;
        while self.step().is_some() {
            steps += 1;
        }
        steps
    }

    /// The current effective graph: alive vertices with working adjacency,
    /// relabelled densely. The map sends current ids to working ids.
    pub fn current_graph(&self) -> (Graph, SubgraphMap) {
        let map = SubgraphMap::from_kept(self.adj.len(), self.alive_vertices());
        let adjacency = (0..map.sub_len())
            .map(|i| {
                self.adj[map.to_parent(i)]
                    .iter()
                    .map(|&w| map.to_sub(w).expect("alive neighbor"))
                    .collect()
            })
            .collect();
        (Graph::from_adjacency_unchecked(adjacency), map)
    }

    pub fn into_kernel(self) -> Kernel {
        let (graph, map) = self.current_graph();
        Kernel {
            graph,
            map,
            theta: self.theta,
            log: self.log,
            base_n: self.base_n,
            packing_conflicts: self.packing_conflicts,
        }
    }
}

/// Irreducible kernel together with what is needed to lift its solutions.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub graph: Graph,
    /// Kernel ids to working ids. Working ids `>= base_len` are synthetic.
    pub map: SubgraphMap,
    pub theta: usize,
    pub log: Vec<UndoRecord>,
    base_n: usize,
    pub packing_conflicts: usize,
}

impl Kernel {
    pub fn base_len(&self) -> usize {
        self.base_n
    }

    /// Original vertex behind a kernel vertex, if any.
    pub fn original_id(&self, kernel_vertex: usize) -> Option<usize> {
        let w = self.map.to_parent(kernel_vertex);
        (w < self.base_n).then_some(w)
    }

    /// Lifts an independent set of the kernel to one of the input graph of
    /// size `|kernel_solution| + theta`.
    pub fn restore_solution(&self, kernel_solution: &VertexSet) -> Result<VertexSet, ReductionError> {
        if kernel_solution.universe() != self.graph.num_vertices() {
            return Err(ReductionError::SizeMismatch {
                expected: self.graph.num_vertices(),
                got: kernel_solution.universe(),
            });
        }
        if !self.graph.is_independent_set(kernel_solution) {
            return Err(ReductionError::InvalidKernelSolution);
        }
        Ok(restore_solution(&self.log, &self.map, self.base_n, kernel_solution))
    }
}

/// Replays `log` in reverse on a kernel solution. `map` sends kernel ids to
/// working ids; the result is restricted to the first `base_n` working ids.
pub fn restore_solution(
    log: &[UndoRecord],
    map: &SubgraphMap,
    base_n: usize,
    kernel_solution: &VertexSet,
) -> VertexSet {
    let mut sol = vec![false; map.parent_len()];
    for v in kernel_solution.iter() {
        sol[map.to_parent(v)] = true;
    }
    for record in log.iter().rev() {
        match record {
            UndoRecord::IncludeVertex(v) => sol[*v] = true,
            UndoRecord::ExcludeVertex(_) => {}
            UndoRecord::Fold {
                center,
                left,
                right,
                merged,
            } => {
                if sol[*merged] {
                    sol[*merged] = false;
                    sol[*left] = true;
                    sol[*right] = true;
                } else {
                    sol[*center] = true;
                }
            }
            UndoRecord::TwinFold {
                twins,
                neighbors,
                gadget,
            } => {
                if sol[*gadget] {
                    sol[*gadget] = false;
                    neighbors.iter().for_each(|&x| sol[x] = true);
                } else {
                    twins.iter().for_each(|&x| sol[x] = true);
                }
            }
            UndoRecord::AlternativeReduce { a, b, a_side } => {
                let side = if a_side.iter().any(|&x| sol[x]) { b } else { a };
                side.iter().for_each(|&x| sol[x] = true);
            }
            UndoRecord::PackingInclude(vs) => vs.iter().for_each(|&x| sol[x] = true),
        }
    }
    VertexSet::from_vertices(base_n, (0..base_n).filter(|&v| sol[v]))
}

/// Applies all rules to fixpoint.
pub fn kernelize(g: &Graph) -> Kernel {
    let mut state = KernelState::new(g);
    state.reduce_to_fixpoint();
    state.into_kernel()
}
