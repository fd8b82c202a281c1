//! File formats, geometric ingestion, generators and rendering.

pub mod generate;
pub mod geom;
pub mod qtg;
pub mod svg;
