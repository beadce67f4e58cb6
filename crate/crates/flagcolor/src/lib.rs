//! An impartial flood-fill recoloring game on colored graphs.
//!
//! A position is a connected, properly colored simple graph. A move picks a
//! vertex and recolors it to the color of one of its neighbors; same-colored
//! neighbors then merge (edge contraction), so every move shrinks the graph.
//! Under normal play the player who makes the last move wins. The library
//! computes Grundy values and outcome classes by memoized search over
//! canonical forms, generates the classic graph families with their
//! closed-form value oracles, ships real-flag positions, reduces positive-CNF
//! avoidance games to graph positions, and enumerates all small positions up
//! to isomorphism.

pub mod canon;
pub mod dot;
pub mod families;
pub mod flags;
pub mod graph;
pub mod parse;
pub mod reduction;
pub mod search;
pub mod solver;

pub use canon::CanonicalKey;
pub use graph::{contract, Color, ColoredGraph, GraphError, Move, Position};
pub use parse::{parse_graph, parse_grid, ParseError};
pub use solver::{mex, Nimber, Outcome, Solver, SolverError, TranspositionTable};
