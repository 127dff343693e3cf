use thiserror::Error;

use crate::graph::Vertex;
use crate::recognition::ForbiddenWitness;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
}

/// Failure of a solver run.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// A structural fact that holds on every (S1,2,4, triangle)-free graph
    /// failed. The witness is an induced triangle or S1,2,4 of the input.
    #[error("input is outside the class ({fact} failed): {witness}")]
    ClassViolation {
        fact: &'static str,
        witness: ForbiddenWitness,
    },
    /// An internal invariant failed although no forbidden subgraph exists.
    #[error("internal invariant failed: {what} (vertices {vertices:?})")]
    ContextViolation { what: String, vertices: Vec<Vertex> },
}

/// Contract breach in the bipartite kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("bipartition does not cover the vertex set")]
    WrongVertexSet,
    #[error("side {side} is not independent")]
    SideNotIndependent { side: u8 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{size} vertices exceed the oracle limit of {limit}")]
    TooManyVertices { size: usize, limit: usize },
    #[error("search exceeded {0} nodes")]
    NodeBudget(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("no S1,2,4-free sample after {0} attempts; lower the density")]
    RetryCapExhausted(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),
    #[error("unknown targeted case `{0}`")]
    UnknownCase(String),
}

/// Parse failure for the DIMACS-like instance format. Lines are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: String },
}
