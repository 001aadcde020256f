use crate::network::NodeId;

/// Errors raised by queries against a validated network.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QueryError {
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("assignment covers {found} variables, network has {expected}")]
    PartialAssignment { expected: usize, found: usize },
    #[error("variable {var} does not exist in the network")]
    UnknownVariable { var: usize },
    #[error("value {value} out of range for variable {var} with {cardinality} categories")]
    ValueOutOfRange { var: usize, value: usize, cardinality: usize },
    #[error("exhaustive search needs {configurations} configurations, cap is {cap}")]
    EnumerationCapExceeded { configurations: u128, cap: u128 },
    #[error("threshold must lie in [0, 1], got ln value {0}")]
    InvalidThreshold(f64),
}

/// Errors raised by the reduction compilers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("clause {clause} has {arity} literals, expected 3")]
    ClauseArity { clause: usize, arity: usize },
    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("clause {clause} mentions variable {var} outside 0..{n}")]
    LiteralOutOfRange { clause: usize, var: usize, n: usize },
    #[error("formula has no clauses")]
    NoClauses,
    #[error("copy count must be at least 1, got {0}")]
    InvalidCopies(usize),
    #[error("invalid amplification parameters: {0}")]
    InvalidAmplification(&'static str),
}
