//! Minimum-cost landmark sets for vertex-weighted trees.
//!
//! A set `L` of vertices is a landmark set in the non-landmarks model with
//! `k = 2` when every pair of vertices outside `L` is told apart by at least
//! two landmarks. [`solve`] finds a cheapest such set in linear time;
//! [`oracle`] holds exhaustive reference routines used to check it.

pub mod cli;
pub mod cost;
pub mod gen;
pub mod io;
pub mod legs;
pub mod oracle;
pub mod solver;
pub mod topology;
pub mod tree;

pub use cost::{Cost, CostParseError};
pub use legs::{LocalSetAssignment, SolutionType, TypedLegSolution};
pub use oracle::{brute_min, verify_landmark, verify_landmark_fast, Model, ModelKind, Verdict};
pub use solver::{solve, LandmarkResult, SolveError};
pub use topology::{classify, CaseTag, CoreRank, LegKind, Topology, VertexClass};
pub use tree::{TreeError, VertexId, WeightedTree};
