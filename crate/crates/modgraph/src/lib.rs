//! Deciding the existence of simple paths and simple cycles with modular
//! length constraints, on directed and undirected graphs.
//!
//! The crate bundles:
//! - exact polynomial solvers for the tractable regimes (walks, DAGs,
//!   parity on undirected graphs, directed odd cycles, bounded treewidth),
//! - executable reductions between the path and cycle problems, including
//!   the hardness gadgets built from two-disjoint-paths instances,
//! - an exhaustive-enumeration oracle that serves as ground truth for every
//!   other component at small scale, and
//! - cross-check harnesses wiring solvers against the oracle.
//!
//! Start with the runnable programs under `examples/`, one per capability.

pub mod crosscheck;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod query;
pub mod reductions;
pub mod treewidth;

pub mod cli;

pub use graph::Graph;
pub use query::{Query, QueryKind, ResidueConstraint, Verdict, Witness};
