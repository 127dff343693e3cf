//! Exact maximum weight independent set for graphs without a triangle and
//! without an induced `S1,2,4`, plus the recognizers, bipartite kernel,
//! exponential oracles and instance generators used to validate it.

pub mod bipartite;
pub mod dimacs;
pub mod error;
pub mod generator;
pub mod graph;
pub mod oracle;
pub mod recognition;
pub mod solver;

pub use error::{BipartiteError, GenerateError, GraphError, OracleError, ParseError, SolveError};
pub use graph::{Bipartition, Vertex, VertexSet, Weight, WeightedGraph};
pub use solver::{solve, solve_with, SolveOptions, SolveResult};
