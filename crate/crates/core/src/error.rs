use thiserror::Error;

use crate::topo::{EdgeId, VertexId};

/// Reasons a raw drawing is rejected by [`crate::topo::TopologicalGraph::build`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("edges {0} and {1} are parallel")]
    ParallelEdge(EdgeId, EdgeId),
    #[error("graph is disconnected (vertex {0} unreachable)")]
    Disconnected(VertexId),
    #[error("rotation at vertex {vertex} is not a permutation of its incident edges")]
    BadRotation { vertex: VertexId },
    #[error("inconsistent crossing index on edge {edge}: {detail}")]
    InconsistentCrossingIndex { edge: EdgeId, detail: String },
    #[error("crossing {0} joins an edge with itself")]
    SelfCrossing(usize),
    #[error("rotation system is not planar: V - E + F = {euler}")]
    NonPlanarRotationSystem { euler: i64 },
    #[error("outer face dart {0} does not exist")]
    BadOuterFace(String),
}

/// Failures of the analysis queries that carry preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("graph is not {k}-planar: edge {edge} has {count} crossings")]
    NotKPlanar { k: usize, edge: EdgeId, count: usize },
    #[error("edge set is not an untangled crossing: {0}")]
    TangledInput(String),
}

/// Failures of the redrawing stages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RedrawError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("crossing is already untangled")]
    NotTangled,
    #[error("pivot {pivot} is an endpoint of edge {edge}")]
    PivotIncident { edge: EdgeId, pivot: VertexId },
    #[error("no matching covers all crossings ({matched} of {total})")]
    NoMatching { matched: usize, total: usize },
    #[error("side blocked while following edge {guide}")]
    SideBlocked { guide: EdgeId },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl From<BuildError> for RedrawError {
    fn from(e: BuildError) -> Self {
        RedrawError::InvariantViolation(format!("redrawn graph failed validation: {e}"))
    }
}

/// Errors of the end-to-end rewrite.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("k must be at least 3 (got {0})")]
    BadK(usize),
    #[error("input is not simple: {0}")]
    NotSimpleInput(String),
    #[error("input is not {k}-planar: edge {edge} has {count} crossings")]
    NotKPlanarInput { k: usize, edge: EdgeId, count: usize },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl From<RedrawError> for PipelineError {
    fn from(e: RedrawError) -> Self {
        PipelineError::InvariantViolation(e.to_string())
    }
}

/// Errors from reading and writing files and geometric ingestion.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Build {
        line: usize,
        #[source]
        source: BuildError,
    },
    #[error("degenerate geometry between {first} and {second}: {detail}")]
    DegenerateGeometry {
        first: String,
        second: String,
        detail: String,
    },
    #[error("drawing is not simple: {0}")]
    NotSimpleDrawing(String),
    #[error("generation exhausted after {0} attempts")]
    GenerationExhausted(usize),
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
