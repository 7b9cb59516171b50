//! Timing probe for per-source reachability runs.

use super::{ConstraintSpec, PathEngine, PathError};
use crate::cloud::PointCloud;
use crate::graph::NeighborhoodGraph;
use std::time::{Duration, Instant};

/// One timed reachability run together with the instance size figures
/// needed to study how runtime scales.
#[derive(Debug, Clone)]
pub struct ProbeRecord {
    pub engine: &'static str,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub max_degree: usize,
    pub n_reachable: usize,
    pub elapsed: Duration,
}

pub fn per_source_complexity_probe(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    engine: &dyn PathEngine,
    source: usize,
    constraint: &ConstraintSpec,
) -> Result<ProbeRecord, PathError> {
    let start = Instant::now();
    let result = engine.reachability(cloud, graph, source, constraint)?;
    let elapsed = start.elapsed();
    Ok(ProbeRecord {
        engine: engine.name(),
        n_vertices: graph.n_vertices(),
        n_edges: graph.n_edges(),
        max_degree: graph.max_degree(),
        n_reachable: result.n_reachable(),
        elapsed,
    })
}
