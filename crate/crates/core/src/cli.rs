//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::graph::{load_edge_list, load_metis, Graph, GraphError, VertexSet};
use crate::local_search::SearchState;
use crate::reductions::kernelize;
use crate::solver::{solve, solve_arw, solve_evomis, Improvement, SolverConfig, SolverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Metis,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Redumis,
    Evomis,
    Arw,
    KernelOnly,
}

/// Compute a large independent set of a graph.
#[derive(Clone, Debug, Parser)]
#[command(name = "redumis", version)]
pub struct RunConfig {
    /// Graph file.
    #[arg(long = "input")]
    pub input_path: PathBuf,
    #[arg(long, value_enum, default_value = "metis")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget in seconds.
    #[arg(long = "time-limit", default_value_t = 60.0)]
    pub time_limit_s: f64,
    /// Unsuccessful combines before an evolutionary phase stops.
    #[arg(long, default_value_t = 1000)]
    pub mu: usize,
    /// Fraction of the kernel solution fixed per recursion level.
    #[arg(long = "lambda", default_value_t = 0.1)]
    pub lambda_fraction: f64,
    #[arg(long, default_value_t = 50)]
    pub population: usize,
    /// Block imbalance allowed for separators.
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    /// Separators precomputed per evolutionary phase.
    #[arg(long, default_value_t = 16)]
    pub pool: usize,
    #[arg(long, value_enum, default_value = "redumis")]
    pub mode: Mode,
    /// Solution file, one vertex id per line.
    #[arg(long = "output")]
    pub output_path: Option<PathBuf>,
    /// CSV of improvements over time.
    #[arg(long = "convergence")]
    pub convergence_path: Option<PathBuf>,
    /// Reload the graph and re-check the solution before exiting.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: GraphError },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("convergence sizes not strictly increasing at row {0}")]
    NonMonotone(usize),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::InvalidConfig(_) => 2,
            _ => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::InvalidConfig(msg.to_string()));
        if !(self.time_limit_s > 0.0 && self.time_limit_s.is_finite()) {
            return bad("time limit must be positive");
        }
        if !(self.lambda_fraction > 0.0 && self.lambda_fraction <= 1.0) {
            return bad("lambda must lie in (0, 1]");
        }
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad("epsilon must be non-negative");
        }
        if self.pool == 0 {
            return bad("pool must be at least 1");
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            mu: self.mu,
            lambda_fraction: self.lambda_fraction,
            time_limit: Duration::from_secs_f64(self.time_limit_s),
            seed: self.seed,
            population: self.population,
            epsilon: self.epsilon,
            pool: self.pool,
        }
    }
}

pub fn load_graph(path: &Path, format: Format) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let parsed = match format {
        Format::Metis => load_metis(&text),
        Format::Edgelist => load_edge_list(&text),
    };
    parsed.map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub n: usize,
    pub m: usize,
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub theta: usize,
    pub best: usize,
    pub found_at: f64,
    pub depth: usize,
    pub solution: VertexSet,
    pub convergence: Vec<Improvement>,
}

impl std::fmt::Display for RunSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "n={} m={} kernel_n={} kernel_m={} theta={} best={} time={:.3} depth={}",
            self.n, self.m, self.kernel_n, self.kernel_m, self.theta, self.best, self.found_at, self.depth
        )
    }
}

/// Loads, solves, and writes outputs. The summary is returned, not printed.
pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let g = load_graph(&config.input_path, config.format)?;
    let solver_config = config.solver_config();
    let mut convergence = Vec::new();
    let record = |imp: Improvement| convergence.push(imp);
    let start = Instant::now();

    let (solution, found_at, depth, kernel_n, kernel_m, theta) = match config.mode {
        Mode::Redumis => {
            let r = solve(&g, &solver_config, record)?;
            let b = r.best;
            (b.vertices, b.found_at, b.level, r.first_kernel_size, r.first_kernel_edges, r.first_theta)
        }
        Mode::Evomis => {
            let b = solve_evomis(&g, &solver_config, record);
            (b.vertices, b.found_at, b.level, g.num_vertices(), g.num_edges(), 0)
        }
        Mode::Arw => {
            let b = solve_arw(&g, &solver_config, record);
            (b.vertices, b.found_at, b.level, g.num_vertices(), g.num_edges(), 0)
        }
        Mode::KernelOnly => {
            let k = kernelize(&g);
            let mut state = SearchState::new(&k.graph, config.seed);
            state.greedy_maximalize(None);
            let solution = k.restore_solution(state.solution())?;
            let t = start.elapsed().as_secs_f64();
            (solution, t, 1, k.graph.num_vertices(), k.graph.num_edges(), k.theta)
        }
    };

    if !g.is_independent_set(&solution) {
        return Err(CliError::Verify("solution is not independent".into()));
    }
    if let Some(path) = &config.output_path {
        write_solution(path, &solution)?;
    }
    if let Some(path) = &config.convergence_path {
        write_convergence(path, &convergence)?;
    }
    if config.verify {
        verify(config, &solution)?;
    }
    Ok(RunSummary {
        n: g.num_vertices(),
        m: g.num_edges(),
        kernel_n,
        kernel_m,
        theta,
        best: solution.len(),
        found_at,
        depth,
        solution,
        convergence,
    })
}

impl From<crate::reductions::ReductionError> for CliError {
    fn from(e: crate::reductions::ReductionError) -> Self {
        CliError::Verify(e.to_string())
    }
}

fn verify(config: &RunConfig, solution: &VertexSet) -> Result<(), CliError> {
    let g = load_graph(&config.input_path, config.format)?;
    let ids = match &config.output_path {
        Some(path) => read_solution(&fs::read_to_string(path).map_err(io_err(path))?)?,
        None => solution.to_vec(),
    };
    if let Some(&v) = ids.iter().find(|&&v| v >= g.num_vertices()) {
        return Err(CliError::Verify(format!("vertex {v} out of range")));
    }
    let set = VertexSet::from_vertices(g.num_vertices(), ids.iter().copied());
    if set.len() != ids.len() {
        return Err(CliError::Verify("duplicate vertex ids".into()));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| set.contains(u) && set.contains(v)) {
        return Err(CliError::Verify(format!("edge {u}-{v} inside the solution")));
    }
    Ok(())
}

pub fn format_solution(solution: &VertexSet) -> String {
    let mut out = String::new();
    for v in solution.iter() {
        writeln!(out, "{v}").unwrap();
    }
    writeln!(out, "# size {}", solution.len()).unwrap();
    out
}

pub fn write_solution(path: &Path, solution: &VertexSet) -> Result<(), CliError> {
    fs::write(path, format_solution(solution)).map_err(io_err(path))
}

/// Vertex ids from a solution file; `#` lines are ignored.
pub fn read_solution(text: &str) -> Result<Vec<usize>, CliError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.parse()
                .map_err(|_| CliError::Verify(format!("bad vertex id {l:?} in solution file")))
        })
        .collect()
}

pub fn format_convergence(tuples: &[Improvement]) -> Result<String, CliError> {
    if let Some(i) = tuples.windows(2).position(|w| w[1].size <= w[0].size) {
        return Err(CliError::NonMonotone(i + 1));
    }
    let mut out = String::from("t_seconds,size,level\n");
    for t in tuples {
        writeln!(out, "{:.6},{},{}", t.t_seconds, t.size, t.level).unwrap();
    }
    Ok(out)
}

pub fn write_convergence(path: &Path, tuples: &[Improvement]) -> Result<(), CliError> {
    let text = format_convergence(tuples)?;
    fs::write(path, text).map_err(io_err(path))
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&config) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
