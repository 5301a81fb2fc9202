//! Large independent sets in sparse graphs.
//!
//! The solver alternates exact kernelization ([`reductions`]), a steady-state
//! evolutionary algorithm with separator-based combine operations
//! ([`evolution`], [`partition`]) and iterated (1,2)-swap local search
//! ([`local_search`]). [`solver::solve`] ties them together: it kernelizes,
//! evolves a solution on the kernel, fixes the lowest-degree solution
//! vertices, and recurses on what is left.

pub mod cli;
pub mod evolution;
pub mod graph;

pub use graph::{Graph, GraphError, SubgraphMap, VertexSet};
pub mod local_search;
pub mod partition;
pub mod reductions;
pub mod solver;

#[cfg(test)]
#[path = "../tests/common/mod.rs"]
mod oracle;
