//! Multi-manifold clustering via curvature-constrained shortest paths.
//!
//! Points sampled from a union of intersecting manifolds are clustered by
//! testing which landmarks can reach which points along paths whose discrete
//! curvature (or turn angle) stays below a bound. Paths that stay on one
//! smooth surface keep their turns small; paths that jump between surfaces
//! must turn sharply at the crossing, so a turn bound separates the surfaces
//! even where they intersect.
//!
//! The pipeline: build a neighborhood graph over the cloud, pick a few
//! landmark points, compute constrained reachability from each landmark,
//! treat the per-landmark reachability bits as a binary feature vector per
//! point, and group identical/near-identical vectors with complete-linkage
//! hierarchical clustering.

pub mod cloud;
pub mod cluster;
pub mod eval;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod path;
pub mod pca;
pub mod synth;

pub use cloud::PointCloud;
pub use cluster::{ClusteringResult, PbcConfig};
pub use graph::{GraphConfig, GraphRule, NeighborhoodGraph};
pub use path::{ConstraintSpec, ReachabilityResult};
pub use synth::{DatasetSpec, LabeledCloud};
