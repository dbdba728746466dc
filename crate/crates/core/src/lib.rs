pub mod classes;
pub mod cutsets;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod poset;
pub mod survey;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
