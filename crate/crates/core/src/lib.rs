//! Redrawing k-planar simple topological graphs into (k+1)-quasi-planar
//! simple topological graphs on the same labeled graph.

pub mod analysis;
pub mod batch;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod pipeline;
pub mod planar;
pub mod redraw;
pub mod reroute;
pub mod simplify;
pub mod topo;
pub mod untangle;

pub use error::{AnalysisError, BuildError, IoError, PipelineError, RedrawError};
pub use topo::{same_labeled_graph, AbstractGraph, Crossing, Dart, Edge, EdgeId, Sign, TopologicalGraph, VertexId};
