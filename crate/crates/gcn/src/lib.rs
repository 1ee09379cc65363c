//! Generalised colouring numbers: exact values on small graphs, and linear
//! orders with guaranteed bounds built from flat decompositions of
//! minor-free and planar graphs.

#![forbid(unsafe_code)]

pub mod builders;
pub mod decomp;
pub mod elim;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lexbfs;
pub mod minor;
pub mod order;
pub mod path;
pub mod planar;
pub mod reach;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use order::LinearOrder;
pub use path::Path;
pub use reach::{Mode, Radius};
pub use tree::Tree;
