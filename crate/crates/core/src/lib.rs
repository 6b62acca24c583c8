pub mod augment;
pub mod cli;
pub mod connectivity;
pub mod convex;
pub mod error;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod insert;
pub mod render;
pub mod report;
pub mod triangulation;

pub use error::{Error, Result};
pub use geom::{Point, PointSet};
pub use graph::{Edge, Layer, LayeredGraph, SimpleGraph};
pub use triangulation::Triangulation;
