//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex reference {vertex} out of range (v_e={v_e}, v_i={v_i})")]
    VertexOutOfRange { vertex: u32, v_e: u32, v_i: u32 },
    #[error("internal vertex {vertex} has valence {valence}, internal vertices must be at least trivalent")]
    InternalValence { vertex: u32, valence: u32 },
    #[error("external vertex {vertex} has no incident edge")]
    IsolatedExternal { vertex: u32 },
    #[error("connected component containing internal vertex {vertex} does not touch the backbone")]
    DetachedComponent { vertex: u32 },
    #[error("edge {index}: loop at external vertex requires a half-edge order in odd parity")]
    MissingHalfOrder { index: usize },
    #[error("edge {index}: half-edge order given for an edge that is not an external loop")]
    UnexpectedHalfOrder { index: usize },
    #[error("edge {index}: odd-parity edge record used in an even-parity graph (or vice versa)")]
    EdgeParityMismatch { index: usize },
    #[error("even-parity edge labels must form a bijection onto 1..={expected}, saw label {label}")]
    BadEdgeLabels { label: u32, expected: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("graph invariant violated: {0}")]
    Invalid(#[from] GraphError),
    #[error("operation requires a line backbone, got circle")]
    CircleUnsupported,
    #[error("arc index {index} invalid for a graph with {v_e} external vertices")]
    BadArc { index: u32, v_e: u32 },
    #[error("edge {index} joins two external vertices and is not contractible")]
    NotContractible { index: usize },
    #[error("edge index {index} out of range ({count} edges)")]
    BadEdgeIndex { index: usize, count: usize },
    #[error("chain is not homogeneous: {0}")]
    MixedGrading(String),
    #[error("backbone or parity mismatch between operands")]
    ComplexMismatch,
    #[error("resource guard tripped: {0}")]
    ResourceGuard(String),
    #[error("basis at (k={k}, m={m}) is missing the image graph {graph}; enumeration incomplete")]
    BasisIncomplete { k: u32, m: u32, graph: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("chain file: unknown graph id `{0}`")]
    UnknownGraphId(String),
    #[error("chain file: graph id `{0}` defined twice")]
    DuplicateGraphId(String),
    #[error("chain references graphs from different complexes")]
    MixedComplexes,
}
