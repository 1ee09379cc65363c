//! Plane embeddings and the planar order constructions.

pub mod embed;
pub mod facetree;
pub mod ipd;

pub use embed::{triangulate, validate_embedding, EmbeddingMode, PlanarEmbedding, RotationSystem};
pub use facetree::{
    build_face_tree, check_carord, check_sreach_path_bounds, lexbfs_planar_order,
    lexbfs_planar_pipeline, FaceTree, PlanarOrderContext,
};
pub use ipd::ipd_maximal_planar;
