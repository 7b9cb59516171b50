//! Constrained shortest-path reachability.
//!
//! A path through the neighborhood graph is admissible when every interior
//! triplet (previous vertex, vertex, next vertex) satisfies the active
//! constraint: either its discrete curvature stays strictly below a bound,
//! or its turn angle stays at or below a bound. The first hop out of the
//! source is always admissible because no triplet exists yet.
//!
//! Three engines compute per-source reachability behind the [`PathEngine`]
//! trait and are selected by name through [`EngineRegistry`]:
//!
//! * `greedy` keeps one parent per vertex and never revisits a settled
//!   vertex. Fast, and the admissibility of whatever it returns is
//!   guaranteed, but it can miss vertices that are only reachable through a
//!   costlier approach direction.
//! * `exact` runs Dijkstra over directed-edge states (arrived-at vertex v
//!   via vertex u), which captures the constraint exactly because
//!   admissibility only couples consecutive edge pairs.
//! * `brute-force` exhaustively searches small instances and serves as the
//!   ground-truth oracle for the other two.

mod brute;
mod exact;
mod greedy;
mod probe;

pub use brute::{brute_force_reachability, BruteForceEngine, DEFAULT_SMALL_INSTANCE_CAP};
pub use exact::{exact_constrained_dijkstra, ExactEngine};
pub use greedy::{greedy_constrained_dijkstra, GreedyEngine};
pub use probe::{per_source_complexity_probe, ProbeRecord};

use crate::cloud::PointCloud;
use crate::geometry::{self, CONSTRAINT_SLACK};
use crate::graph::NeighborhoodGraph;
use once_cell::sync::Lazy;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PathError {
    #[error("source vertex {vertex} out of range for {n} vertices")]
    SourceOutOfRange { vertex: usize, n: usize },
    #[error("graph has {graph} vertices but the cloud has {cloud} points")]
    GraphCloudMismatch { graph: usize, cloud: usize },
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error("instance has {n} vertices, above the brute-force cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
}

/// Admissibility rule applied to every interior triplet of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstraintSpec {
    /// Discrete curvature strictly below `kappa`.
    Curvature { kappa: f64 },
    /// Turn angle at most `theta` (radians).
    Angle { theta: f64 },
}

impl ConstraintSpec {
    pub fn curvature(kappa: f64) -> Result<Self, PathError> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(PathError::InvalidConstraint(format!(
                "curvature bound must be positive and finite, got {kappa}"
            )));
        }
        Ok(ConstraintSpec::Curvature { kappa })
    }

    pub fn angle(theta: f64) -> Result<Self, PathError> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(PathError::InvalidConstraint(format!(
                "angle bound must lie in (0, pi), got {theta}"
            )));
        }
        Ok(ConstraintSpec::Angle { theta })
    }

    pub fn validate(&self) -> Result<(), PathError> {
        match *self {
            ConstraintSpec::Curvature { kappa } => Self::curvature(kappa).map(|_| ()),
            ConstraintSpec::Angle { theta } => Self::angle(theta).map(|_| ()),
        }
    }

    /// Whether the ordered triplet (x, y, z) may appear as consecutive path
    /// vertices. Comparisons carry a relative slack of 1e-12 so values
    /// sitting exactly on the bound do not flip with rounding differences.
    /// Degenerate triplets with a zero-length leg never arise from valid
    /// graphs and fail the check.
    #[inline]
    pub fn passes(&self, x: &[f64], y: &[f64], z: &[f64]) -> bool {
        match *self {
            ConstraintSpec::Curvature { kappa } => match geometry::curvature(x, y, z) {
                Ok(c) => c < kappa * (1.0 + CONSTRAINT_SLACK),
                Err(_) => false,
            },
            ConstraintSpec::Angle { theta } => match geometry::turn_angle(x, y, z) {
                Ok(a) => a <= theta * (1.0 + CONSTRAINT_SLACK),
                Err(_) => false,
            },
        }
    }

    pub fn bound(&self) -> f64 {
        match *self {
            ConstraintSpec::Curvature { kappa } => kappa,
            ConstraintSpec::Angle { theta } => theta,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConstraintSpec::Curvature { .. } => "curvature",
            ConstraintSpec::Angle { .. } => "angle",
        }
    }
}

/// Per-source reachability under a constraint.
///
/// The source is always reachable with cost 0 and an empty path. Every
/// other reachable vertex stores a full vertex sequence from the source to
/// itself; the sequence may revisit vertices, because admissible minimal
/// walks sometimes must.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachabilityResult {
    pub source: usize,
    pub reachable: Vec<bool>,
    pub cost: Vec<Option<f64>>,
    pub path: Vec<Option<Vec<usize>>>,
}

impl ReachabilityResult {
    pub fn n_reachable(&self) -> usize {
        self.reachable.iter().filter(|&&r| r).count()
    }

    pub fn reachable_set(&self) -> Vec<usize> {
        (0..self.reachable.len())
            .filter(|&v| self.reachable[v])
            .collect()
    }

    /// True when every vertex reachable here is also reachable in `other`.
    pub fn subset_of(&self, other: &ReachabilityResult) -> bool {
        self.reachable
            .iter()
            .zip(&other.reachable)
            .all(|(a, b)| !*a || *b)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ValidationError {
    #[error("result field lengths disagree with the vertex count")]
    ShapeMismatch,
    #[error("source {0} not marked reachable with cost 0 and an empty path")]
    BadSource(usize),
    #[error("vertex {0}: reachable flag, cost, and path presence disagree")]
    InconsistentFlags(usize),
    #[error("vertex {v}: stored path must start at the source and end at {v}")]
    BadEndpoints { v: usize },
    #[error("vertex {v}: path step ({a}, {b}) is not a graph edge")]
    MissingEdge { v: usize, a: usize, b: usize },
    #[error("vertex {v}: stored cost {stored} differs from path weight sum {summed}")]
    WrongCost { v: usize, stored: f64, summed: f64 },
    #[error("vertex {v}: triplet at path position {pos} violates the constraint")]
    ConstraintViolated { v: usize, pos: usize },
}

/// Checks a [`ReachabilityResult`] against the graph and constraint from
/// first principles. Implemented independently of the engines so it can
/// vouch for any of them.
pub fn validate_result(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    constraint: &ConstraintSpec,
    result: &ReachabilityResult,
) -> Result<(), ValidationError> {
    let n = graph.n_vertices();
    if result.reachable.len() != n || result.cost.len() != n || result.path.len() != n {
        return Err(ValidationError::ShapeMismatch);
    }
    let s = result.source;
    if !result.reachable[s]
        || result.cost[s] != Some(0.0)
        || result.path[s].as_deref() != Some(&[])
    {
        return Err(ValidationError::BadSource(s));
    }
    for v in 0..n {
        if v == s {
            continue;
        }
        let present = result.path[v].is_some();
        if result.reachable[v] != present || result.cost[v].is_some() != present {
            return Err(ValidationError::InconsistentFlags(v));
        }
        let Some(path) = &result.path[v] else {
            continue;
        };
        if path.first() != Some(&s) || path.last() != Some(&v) || path.len() < 2 {
            return Err(ValidationError::BadEndpoints { v });
        }
        let mut total = 0.0;
        for k in 0..path.len() - 1 {
            match graph.edge_weight(path[k], path[k + 1]) {
                Some(w) => total += w,
                None => {
                    return Err(ValidationError::MissingEdge {
                        v,
                        a: path[k],
                        b: path[k + 1],
                    })
                }
            }
        }
        let stored = result.cost[v].unwrap();
        if (stored - total).abs() > 1e-9 * total.max(1.0) {
            return Err(ValidationError::WrongCost {
                v,
                stored,
                summed: total,
            });
        }
        for k in 1..path.len() - 1 {
            let (x, y, z) = (
                cloud.point(path[k - 1]),
                cloud.point(path[k]),
                cloud.point(path[k + 1]),
            );
            if !constraint.passes(x, y, z) {
                return Err(ValidationError::ConstraintViolated { v, pos: k });
            }
        }
    }
    Ok(())
}

/// A reachability algorithm selectable by name.
pub trait PathEngine: Send + Sync {
    fn name(&self) -> &'static str;

    /// One-line summary for registry listings and CLI help.
    fn describe(&self) -> &'static str;

    fn reachability(
        &self,
        cloud: &PointCloud,
        graph: &NeighborhoodGraph,
        source: usize,
        constraint: &ConstraintSpec,
    ) -> Result<ReachabilityResult, PathError>;
}

/// Name-keyed collection of engines.
#[derive(Default)]
pub struct EngineRegistry {
    entries: Vec<Arc<dyn PathEngine>>,
}

impl EngineRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers an engine, replacing any previous entry with the same name.
    pub fn register(&mut self, engine: Arc<dyn PathEngine>) {
        self.entries.retain(|e| e.name() != engine.name());
        self.entries.push(engine);
    }

    pub fn find(&self, name: &str) -> Option<Arc<dyn PathEngine>> {
        self.entries.iter().find(|e| e.name() == name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn PathEngine>> {
        self.entries.iter()
    }
}

/// Registry with the built-in engines: `greedy`, `exact`, and `brute-force`.
pub fn default_registry() -> &'static EngineRegistry {
    static REGISTRY: Lazy<EngineRegistry> = Lazy::new(|| {
        let mut r = EngineRegistry::new();
        r.register(Arc::new(GreedyEngine));
        r.register(Arc::new(ExactEngine));
        r.register(Arc::new(BruteForceEngine::default()));
        r
    });
    &REGISTRY
}

pub(crate) fn check_instance(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    source: usize,
    constraint: &ConstraintSpec,
) -> Result<(), PathError> {
    if graph.n_vertices() != cloud.len() {
        return Err(PathError::GraphCloudMismatch {
            graph: graph.n_vertices(),
            cloud: cloud.len(),
        });
    }
    if source >= graph.n_vertices() {
        return Err(PathError::SourceOutOfRange {
            vertex: source,
            n: graph.n_vertices(),
        });
    }
    constraint.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_constructors_validate() {
        assert!(ConstraintSpec::curvature(2.0).is_ok());
        assert!(ConstraintSpec::curvature(0.0).is_err());
        assert!(ConstraintSpec::curvature(f64::INFINITY).is_err());
        assert!(ConstraintSpec::angle(1.0).is_ok());
        assert!(ConstraintSpec::angle(0.0).is_err());
        assert!(ConstraintSpec::angle(std::f64::consts::PI).is_err());
    }

    #[test]
    fn passes_applies_slack_at_the_bound() {
        // Right-angle turn: curvature is infinite, angle is exactly pi/2.
        let x = [0.0, 0.0];
        let y = [1.0, 0.0];
        let z = [1.0, 1.0];
        let c = ConstraintSpec::curvature(1e12).unwrap();
        assert!(!c.passes(&x, &y, &z));
        let a = ConstraintSpec::angle(std::f64::consts::FRAC_PI_2).unwrap();
        assert!(a.passes(&x, &y, &z));
        let tight = ConstraintSpec::angle(std::f64::consts::FRAC_PI_2 * 0.99).unwrap();
        assert!(!tight.passes(&x, &y, &z));
    }

    #[test]
    fn registry_finds_builtins() {
        let reg = default_registry();
        let names = reg.names();
        assert!(names.contains(&"greedy"));
        assert!(names.contains(&"exact"));
        assert!(names.contains(&"brute-force"));
        assert!(reg.find("exact").is_some());
        assert!(reg.find("no-such-engine").is_none());
    }

    #[test]
    fn registry_replaces_by_name() {
        let mut reg = EngineRegistry::new();
        reg.register(Arc::new(GreedyEngine));
        reg.register(Arc::new(GreedyEngine));
        assert_eq!(reg.names(), vec!["greedy"]);
    }
}
