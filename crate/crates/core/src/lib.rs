//! Route planning with A* and exact potentials from contraction hierarchies.
//!
//! A contraction hierarchy is built once for a lower-bound weight function.
//! Queries then run A* on the actual query weights, which may be scaled,
//! partially blocked, time-dependent or turn-aware, using distances in the
//! hierarchy as the heuristic. As long as the query weights never drop below
//! the lower bound, the heuristic stays feasible and results are exact.

pub mod applications;
pub mod astar;
pub mod baselines;
pub mod ch;
pub mod datastr;
pub mod dijkstra;
pub mod graph;
pub mod harness;
pub mod io;
pub mod potentials;

pub use astar::{AStar, CoreDecomposition, QueryError, QueryOptions, QueryResult, QueryStats, QueryWeights};
pub use ch::ContractionHierarchy;
pub use graph::{link, EdgeId, EdgeTags, Graph, InputEdge, NodeId, Timestamp, Weight, INFINITY, INVALID_NODE};
pub use potentials::{ChPotential, MappedPotential, Potential, ZeroPotential};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/hierarchy.md")]
    pub struct Hierarchy;
    #[doc = include_str!("../../../book/src/potentials.md")]
    pub struct Potentials;
    #[doc = include_str!("../../../book/src/astar.md")]
    pub struct AStarQueries;
    #[doc = include_str!("../../../book/src/scenarios.md")]
    pub struct Scenarios;
    #[doc = include_str!("../../../book/src/baselines.md")]
    pub struct Baselines;
    #[doc = include_str!("../../../book/src/experiments.md")]
    pub struct Experiments;
}
