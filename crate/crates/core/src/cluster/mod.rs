//! Landmark-reachability clustering.
//!
//! The pipeline: build a neighborhood graph, pick M landmark vertices,
//! compute the constrained-path reachability set of each landmark, encode
//! every point as the M-bit vector of which landmarks reach it, then run
//! complete-linkage clustering on Hamming distances between those vectors
//! down to K clusters. Points on the same smooth sheet tend to share
//! reachability patterns because low-turn paths do not cross sharp
//! junctions, so the bit vectors separate sheets even where they
//! intersect in space.

pub mod linkage;
mod tune;

pub use linkage::{complete_linkage_merges, roots_after, MergeStep};
pub use tune::{tune_constraint, TuneOutcome, TuneStep};

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cloud::PointCloud;
use crate::graph::{build_graph, GraphConfig, GraphError, NeighborhoodGraph};
use crate::path::{default_registry, ConstraintSpec, PathEngine, PathError};

#[derive(Debug, thiserror::Error)]
pub enum ClusterError {
    #[error("graph stage failed: {0}")]
    Graph(#[from] GraphError),
    #[error("reachability stage failed: {0}")]
    Path(#[from] PathError),
    #[error("no path engine named {name:?}; available: {available:?}")]
    UnknownEngine {
        name: String,
        available: Vec<&'static str>,
    },
    #[error("only {distinct} distinct reachability vectors but {k} clusters requested")]
    TooFewDistinctVectors { distinct: usize, k: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Everything needed to run the clustering pipeline on a cloud.
#[derive(Debug, Clone)]
pub struct PbcConfig {
    pub graph: GraphConfig,
    pub constraint: ConstraintSpec,
    /// Number of clusters to produce.
    pub k: usize,
    /// Number of landmarks; `None` picks `max(2k, k + 5)`.
    pub m: Option<usize>,
    /// Path engine name looked up in the default registry.
    pub engine: String,
    /// Seed for landmark selection.
    pub seed: u64,
    /// Collapse exactly coincident points before building the graph and
    /// copy labels back to every duplicate afterwards.
    pub dedup: bool,
}

impl PbcConfig {
    pub fn new(graph: GraphConfig, constraint: ConstraintSpec, k: usize) -> Self {
        PbcConfig {
            graph,
            constraint,
            k,
            m: None,
            engine: "exact".to_string(),
            seed: 0,
            dedup: true,
        }
    }

    /// Landmark count after applying the default rule.
    pub fn landmark_count(&self) -> usize {
        self.m.unwrap_or_else(|| default_landmark_count(self.k))
    }
}

/// Default number of landmarks for `k` clusters. Redundant landmarks per
/// cluster keep a single unlucky pick (or a leaked path) from erasing the
/// signal, while staying cheap for small `k`.
pub fn default_landmark_count(k: usize) -> usize {
    (2 * k).max(k + 5)
}

/// Row-major boolean matrix: `value(i, l)` is true when landmark slot `l`
/// reaches point `i`.
#[derive(Debug, Clone)]
pub struct FeatureMatrix {
    n: usize,
    /// Landmark vertex indices, one per column, ascending.
    pub landmarks: Vec<usize>,
    bits: Vec<bool>,
}

impl FeatureMatrix {
    pub fn new(n: usize, landmarks: Vec<usize>) -> Self {
        let m = landmarks.len();
        FeatureMatrix {
            n,
            landmarks,
            bits: vec![false; n * m],
        }
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    pub fn n_landmarks(&self) -> usize {
        self.landmarks.len()
    }

    pub fn value(&self, point: usize, slot: usize) -> bool {
        self.bits[point * self.landmarks.len() + slot]
    }

    pub fn row(&self, point: usize) -> &[bool] {
        let m = self.landmarks.len();
        &self.bits[point * m..(point + 1) * m]
    }

    pub fn set(&mut self, point: usize, slot: usize, v: bool) {
        self.bits[point * self.landmarks.len() + slot] = v;
    }

    /// Number of differing bits between two rows.
    pub fn hamming(&self, i: usize, j: usize) -> u32 {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .filter(|(a, b)| a != b)
            .count() as u32
    }

    /// Count of points each landmark reaches (including itself).
    pub fn column_counts(&self) -> Vec<usize> {
        let m = self.landmarks.len();
        let mut counts = vec![0usize; m];
        for i in 0..self.n {
            for (l, &b) in self.row(i).iter().enumerate() {
                if b {
                    counts[l] += 1;
                }
            }
        }
        counts
    }
}

/// Draws `m` distinct vertex indices uniformly without replacement,
/// returned ascending. Fixed seed gives a fixed draw.
pub fn select_landmarks(n: usize, m: usize, seed: u64) -> Result<Vec<usize>, ClusterError> {
    if m == 0 {
        return Err(ClusterError::InvalidConfig(
            "landmark count must be at least 1".to_string(),
        ));
    }
    if m > n {
        return Err(ClusterError::InvalidConfig(format!(
            "cannot draw {m} landmarks from {n} points"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, n, m).into_vec();
    picked.sort_unstable();
    Ok(picked)
}

/// Runs one reachability query per landmark (in parallel) and packs the
/// results into a feature matrix.
pub fn build_features(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    landmarks: &[usize],
    constraint: &ConstraintSpec,
    engine: &dyn PathEngine,
) -> Result<FeatureMatrix, ClusterError> {
    let columns: Vec<Vec<bool>> = landmarks
        .par_iter()
        .map(|&l| {
            engine
                .reachability(cloud, graph, l, constraint)
                .map(|r| r.reachable)
        })
        .collect::<Result<_, _>>()?;
    let mut features = FeatureMatrix::new(cloud.len(), landmarks.to_vec());
    for (slot, col) in columns.iter().enumerate() {
        for (i, &b) in col.iter().enumerate() {
            if b {
                features.set(i, slot, true);
            }
        }
    }
    Ok(features)
}

/// Grouped linkage output: per-point labels plus the merge trace over
/// distinct vectors.
#[derive(Debug, Clone)]
pub struct LinkageOutcome {
    pub labels: Vec<usize>,
    pub distinct_vectors: usize,
    pub merges: Vec<MergeStep>,
}

/// Clusters feature rows with complete linkage on Hamming distance.
///
/// Identical rows are grouped first (they can never be split by an
/// agglomerative pass, and collapsing them makes the linkage cost depend
/// on the number of distinct vectors rather than the number of points).
/// Labels are contiguous `0..k`, numbered by first occurrence of each
/// final cluster over point order.
pub fn cluster_features(features: &FeatureMatrix, k: usize) -> Result<LinkageOutcome, ClusterError> {
    if k == 0 {
        return Err(ClusterError::InvalidConfig(
            "cluster count must be at least 1".to_string(),
        ));
    }
    let n = features.n_points();
    // Group identical rows; group ids follow first occurrence.
    let mut group_of_point = vec![0usize; n];
    let mut reps: Vec<usize> = Vec::new();
    {
        use std::collections::HashMap;
        let mut seen: HashMap<&[bool], usize> = HashMap::new();
        for i in 0..n {
            let row = features.row(i);
            let g = *seen.entry(row).or_insert_with(|| {
                reps.push(i);
                reps.len() - 1
            });
            group_of_point[i] = g;
        }
    }
    let distinct = reps.len();
    if distinct < k {
        return Err(ClusterError::TooFewDistinctVectors { distinct, k });
    }
    let dist = |a: usize, b: usize| features.hamming(reps[a], reps[b]);
    let merges = complete_linkage_merges(distinct, &dist, k);
    let roots = roots_after(distinct, &merges);
    // Contiguous labels in order of first appearance over points.
    let mut label_of_root = vec![usize::MAX; distinct];
    let mut next = 0usize;
    let mut labels = vec![0usize; n];
    for i in 0..n {
        let root = roots[group_of_point[i]];
        if label_of_root[root] == usize::MAX {
            label_of_root[root] = next;
            next += 1;
        }
        labels[i] = label_of_root[root];
    }
    debug_assert_eq!(next, k);
    Ok(LinkageOutcome {
        labels,
        distinct_vectors: distinct,
        merges,
    })
}

/// Wall-clock timings and size counters from one pipeline run.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub n_points: usize,
    pub n_after_dedup: usize,
    pub n_edges: usize,
    pub max_degree: usize,
    pub distinct_vectors: usize,
    /// Points reached per landmark, same order as the landmark list.
    pub per_landmark_reachable: Vec<usize>,
    pub stage_timings: Vec<(&'static str, Duration)>,
}

#[derive(Debug, Clone)]
pub struct ClusteringResult {
    /// One label per input point, contiguous `0..k`.
    pub labels: Vec<usize>,
    pub k: usize,
    /// Landmark indices into the deduplicated cloud.
    pub landmarks: Vec<usize>,
    pub features: FeatureMatrix,
    pub cluster_sizes: Vec<usize>,
    pub diagnostics: Diagnostics,
}

fn resolve_engine(name: &str) -> Result<Arc<dyn PathEngine>, ClusterError> {
    let registry = default_registry();
    registry
        .find(name)
        .ok_or_else(|| ClusterError::UnknownEngine {
            name: name.to_string(),
            available: registry.names(),
        })
}

/// Runs the full pipeline on a cloud and returns per-point labels.
pub fn run_pbc(cloud: &PointCloud, config: &PbcConfig) -> Result<ClusteringResult, ClusterError> {
    let engine = resolve_engine(&config.engine)?;
    let mut diagnostics = Diagnostics {
        n_points: cloud.len(),
        ..Diagnostics::default()
    };

    let (work, rep_of_point) = if config.dedup {
        let (deduped, map) = cloud.deduplicated();
        (deduped, Some(map))
    } else {
        (cloud.clone(), None)
    };
    diagnostics.n_after_dedup = work.len();

    let m = config.landmark_count();
    if m > work.len() {
        return Err(ClusterError::InvalidConfig(format!(
            "{m} landmarks requested but only {} distinct points",
            work.len()
        )));
    }
    if config.k > work.len() {
        return Err(ClusterError::InvalidConfig(format!(
            "{} clusters requested but only {} distinct points",
            config.k,
            work.len()
        )));
    }

    let t = Instant::now();
    let graph = build_graph(&work, &config.graph)?;
    diagnostics.stage_timings.push(("graph", t.elapsed()));
    diagnostics.n_edges = graph.n_edges();
    diagnostics.max_degree = graph.max_degree();

    let t = Instant::now();
    let landmarks = select_landmarks(work.len(), m, config.seed)?;
    diagnostics.stage_timings.push(("landmarks", t.elapsed()));

    let t = Instant::now();
    let features = build_features(&work, &graph, &landmarks, &config.constraint, &*engine)?;
    diagnostics.stage_timings.push(("features", t.elapsed()));
    diagnostics.per_landmark_reachable = features.column_counts();

    let t = Instant::now();
    let outcome = cluster_features(&features, config.k)?;
    diagnostics.stage_timings.push(("linkage", t.elapsed()));
    diagnostics.distinct_vectors = outcome.distinct_vectors;

    let labels = match &rep_of_point {
        Some(map) => map.iter().map(|&rep| outcome.labels[rep]).collect(),
        None => outcome.labels,
    };
    let mut cluster_sizes = vec![0usize; config.k];
    for &l in &labels {
        cluster_sizes[l] += 1;
    }
    Ok(ClusteringResult {
        labels,
        k: config.k,
        landmarks,
        features,
        cluster_sizes,
        diagnostics,
    })
}
