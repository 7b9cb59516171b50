//! Neighborhood graphs over point clouds.
//!
//! Three construction rules are supported: symmetric k-nearest-neighbor
//! (an edge exists when either endpoint lists the other among its q
//! nearest), epsilon-ball (all pairs within epsilon), and annulus (pairs
//! whose distance lies in [inner_fraction * epsilon, epsilon]). The annulus
//! rule exists because very short edges make turn angles meaningless at the
//! sampling-noise scale; forcing a minimum edge length keeps every triplet's
//! legs comparable to epsilon.
//!
//! Edges are undirected, weighted by Euclidean distance, and adjacency
//! lists are sorted by neighbor index. Construction is deterministic:
//! distance ties in the k-NN rule are broken toward the lower vertex index.

pub(crate) mod kdtree;

use crate::cloud::PointCloud;
use kdtree::KdTree;
use rayon::prelude::*;
use thiserror::Error;

/// Ambient dimension above which neighbor queries fall back to brute-force
/// scans instead of a spatial index. Both paths return identical results.
pub const SPATIAL_INDEX_MAX_DIM: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("cloud has {0} points; need at least 2")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide; deduplicate the cloud or jitter it")]
    DegenerateCloud(usize, usize),
    #[error("invalid graph config: {0}")]
    InvalidConfig(String),
}

/// Edge-selection rule for [`build_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphRule {
    /// Symmetric union k-NN: edge (i, j) iff j is among the q nearest of i
    /// or i among the q nearest of j.
    Knn { q: usize },
    /// All pairs at distance <= epsilon.
    EpsBall { epsilon: f64 },
    /// Pairs at distance in [inner_fraction * epsilon, epsilon], inclusive
    /// on both ends.
    Annulus { epsilon: f64, inner_fraction: f64 },
}

/// Default inner radius of the annulus rule, as a fraction of epsilon.
pub const DEFAULT_INNER_FRACTION: f64 = 0.5;

impl GraphRule {
    pub fn annulus(epsilon: f64) -> Self {
        GraphRule::Annulus {
            epsilon,
            inner_fraction: DEFAULT_INNER_FRACTION,
        }
    }

    fn validate(&self, n: usize) -> Result<(), GraphError> {
        match *self {
            GraphRule::Knn { q } => {
                if q == 0 || q >= n {
                    return Err(GraphError::InvalidConfig(format!(
                        "knn q must satisfy 1 <= q <= n-1, got q={q} with n={n}"
                    )));
                }
            }
            GraphRule::EpsBall { epsilon } => {
                if !(epsilon > 0.0 && epsilon.is_finite()) {
                    return Err(GraphError::InvalidConfig(format!(
                        "eps_ball epsilon must be positive and finite, got {epsilon}"
                    )));
                }
            }
            GraphRule::Annulus {
                epsilon,
                inner_fraction,
            } => {
                if !(epsilon > 0.0 && epsilon.is_finite()) {
                    return Err(GraphError::InvalidConfig(format!(
                        "annulus epsilon must be positive and finite, got {epsilon}"
                    )));
                }
                if !(inner_fraction > 0.0 && inner_fraction < 1.0) {
                    return Err(GraphError::InvalidConfig(format!(
                        "annulus inner_fraction must lie in (0, 1), got {inner_fraction}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Graph construction parameters; currently just the edge rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphConfig {
    pub rule: GraphRule,
}

impl From<GraphRule> for GraphConfig {
    fn from(rule: GraphRule) -> Self {
        GraphConfig { rule }
    }
}

/// Undirected weighted graph in compressed sparse row form. Vertex i of the
/// graph is point i of the cloud it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

impl NeighborhoodGraph {
    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn n_edges(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n_vertices()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbors of v with edge weights, sorted by neighbor index.
    #[inline]
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.targets[r.clone()]
            .iter()
            .copied()
            .zip(self.weights[r].iter().copied())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.targets[r].binary_search(&j).is_ok()
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> Option<f64> {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.targets[r.clone()]
            .binary_search(&j)
            .ok()
            .map(|pos| self.weights[self.offsets[i] + pos])
    }

    /// Undirected edges as (i, j, weight) with i < j, sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.n_edges());
        for i in 0..self.n_vertices() {
            for (j, w) in self.neighbors(i) {
                if i < j {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    /// Builds a graph from an explicit undirected edge list, weighting each
    /// edge by the Euclidean distance between its endpoints in `cloud`.
    /// Intended for tests and hand-crafted instances.
    pub fn from_pairs(
        cloud: &PointCloud,
        pairs: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = cloud.len();
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            if i == j || i >= n || j >= n {
                return Err(GraphError::InvalidConfig(format!(
                    "bad edge ({i}, {j}) for a {n}-vertex cloud"
                )));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(assemble(cloud, &norm))
    }

    /// Connected components. Returns per-vertex labels, contiguous from 0 in
    /// order of first appearance, plus the component count.
    pub fn connected_components(&self) -> (Vec<usize>, usize) {
        let n = self.n_vertices();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for (u, _) in self.neighbors(v) {
                    if label[u] == usize::MAX {
                        label[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

fn assemble(cloud: &PointCloud, pairs: &[(usize, usize)]) -> NeighborhoodGraph {
    let n = cloud.len();
    let mut deg = vec![0usize; n];
    for &(i, j) in pairs {
        deg[i] += 1;
        deg[j] += 1;
    }
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + deg[v];
    }
    let m = offsets[n];
    let mut targets = vec![0usize; m];
    let mut weights = vec![0.0f64; m];
    let mut cursor = offsets.clone();
    // Pairs are sorted by (i, j), so each vertex's list comes out sorted:
    // the i side is filled in j order and the j side in i order.
    for &(i, j) in pairs {
        let w = cloud.distance(i, j);
        targets[cursor[i]] = j;
        weights[cursor[i]] = w;
        cursor[i] += 1;
        targets[cursor[j]] = i;
        weights[cursor[j]] = w;
        cursor[j] += 1;
    }
    NeighborhoodGraph {
        offsets,
        targets,
        weights,
    }
}

/// Builds the neighborhood graph for `cloud` under `config`.
///
/// Coincident points are rejected: they would create zero-length edges, and
/// turn angles through them are undefined. Deduplicate the cloud first if
/// repeated points are expected.
pub fn build_graph(
    cloud: &PointCloud,
    config: &GraphConfig,
) -> Result<NeighborhoodGraph, GraphError> {
    let n = cloud.len();
    if n < 2 {
        return Err(GraphError::TooFewPoints(n));
    }
    config.rule.validate(n)?;
    if let Some((i, j)) = cloud.find_duplicate() {
        return Err(GraphError::DegenerateCloud(i, j));
    }

    let use_tree = cloud.dim() <= SPATIAL_INDEX_MAX_DIM;
    let tree = use_tree.then(|| KdTree::build(cloud));

    let per_vertex: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| match config.rule {
            GraphRule::Knn { q } => match &tree {
                Some(t) => t.k_nearest(i, q).into_iter().map(|(j, _)| j).collect(),
                None => brute_knn(cloud, i, q),
            },
            GraphRule::EpsBall { epsilon } => match &tree {
                Some(t) => t
                    .within(i, epsilon)
                    .into_iter()
                    .filter(|&(j, _)| j > i)
                    .map(|(j, _)| j)
                    .collect(),
                None => brute_range(cloud, i, 0.0, epsilon),
            },
            GraphRule::Annulus {
                epsilon,
                inner_fraction,
            } => {
                let inner = inner_fraction * epsilon;
                match &tree {
                    Some(t) => t
                        .within(i, epsilon)
                        .into_iter()
                        .filter(|&(j, d)| j > i && d >= inner)
                        .map(|(j, _)| j)
                        .collect(),
                    None => brute_range(cloud, i, inner, epsilon),
                }
            }
        })
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, neigh) in per_vertex.iter().enumerate() {
        for &j in neigh {
            pairs.push((i.min(j), i.max(j)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(assemble(cloud, &pairs))
}

fn brute_knn(cloud: &PointCloud, i: usize, q: usize) -> Vec<usize> {
    let mut all: Vec<(f64, usize)> = (0..cloud.len())
        .filter(|&j| j != i)
        .map(|j| (cloud.distance(i, j), j))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    all.truncate(q);
    all.into_iter().map(|(_, j)| j).collect()
}

fn brute_range(cloud: &PointCloud, i: usize, lo: f64, hi: f64) -> Vec<usize> {
    ((i + 1)..cloud.len())
        .filter(|&j| {
            let d = cloud.distance(i, j);
            d >= lo && d <= hi
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_cloud(n: usize) -> PointCloud {
        PointCloud::from_rows(&(0..n).map(|i| vec![i as f64, 0.0]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn collinear_knn1_gives_path_graph() {
        let cloud = line_cloud(3);
        let g = build_graph(&cloud, &GraphRule::Knn { q: 1 }.into()).unwrap();
        assert_eq!(
            g.edge_list()
                .into_iter()
                .map(|(i, j, _)| (i, j))
                .collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
    }

    #[test]
    fn knn_tie_at_cutoff_prefers_lower_index() {
        // Vertex 0 sees vertices 1 and 2 both at distance 2; with q = 1 the
        // lower index wins, and no other vertex lists 2 as a neighbor of 0.
        let cloud = PointCloud::from_rows(&[
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![-2.0, 0.0],
            vec![2.5, 0.0],
            vec![-2.5, 0.0],
        ])
        .unwrap();
        let g = build_graph(&cloud, &GraphRule::Knn { q: 1 }.into()).unwrap();
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(0, 2));
        assert!(g.has_edge(1, 3));
        assert!(g.has_edge(2, 4));
    }

    #[test]
    fn eps_ball_on_unit_spaced_points() {
        let cloud = line_cloud(4);
        let g = build_graph(&cloud, &GraphRule::EpsBall { epsilon: 1.1 }.into()).unwrap();
        assert_eq!(
            g.edge_list()
                .into_iter()
                .map(|(i, j, _)| (i, j))
                .collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 3)]
        );
    }

    #[test]
    fn annulus_skips_short_edges() {
        // Unit-spaced collinear points, outer radius 2.1, inner radius 1.05:
        // only the distance-2 pairs qualify.
        let cloud = line_cloud(4);
        let g = build_graph(
            &cloud,
            &GraphRule::Annulus {
                epsilon: 2.1,
                inner_fraction: 0.5,
            }
            .into(),
        )
        .unwrap();
        assert_eq!(
            g.edge_list()
                .into_iter()
                .map(|(i, j, _)| (i, j))
                .collect::<Vec<_>>(),
            vec![(0, 2), (1, 3)]
        );
    }

    #[test]
    fn duplicates_are_rejected() {
        let cloud =
            PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(
            build_graph(&cloud, &GraphRule::Knn { q: 1 }.into()),
            Err(GraphError::DegenerateCloud(0, 2))
        );
    }

    #[test]
    fn config_validation() {
        let cloud = line_cloud(4);
        assert!(build_graph(&cloud, &GraphRule::Knn { q: 0 }.into()).is_err());
        assert!(build_graph(&cloud, &GraphRule::Knn { q: 4 }.into()).is_err());
        assert!(build_graph(&cloud, &GraphRule::EpsBall { epsilon: -1.0 }.into()).is_err());
        assert!(build_graph(
            &cloud,
            &GraphRule::Annulus {
                epsilon: 1.0,
                inner_fraction: 1.0
            }
            .into()
        )
        .is_err());
    }

    #[test]
    fn components_and_weights() {
        let cloud = PointCloud::from_rows(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![10.0, 0.0],
            vec![11.0, 0.0],
        ])
        .unwrap();
        let g = build_graph(&cloud, &GraphRule::EpsBall { epsilon: 1.5 }.into()).unwrap();
        let (labels, count) = g.connected_components();
        assert_eq!(count, 2);
        assert_eq!(labels, vec![0, 0, 1, 1]);
        assert_eq!(g.edge_weight(0, 1), Some(1.0));
        assert_eq!(g.edge_weight(0, 2), None);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.max_degree(), 1);
    }

    #[test]
    fn from_pairs_dedups_and_sorts() {
        let cloud = line_cloud(3);
        let g = NeighborhoodGraph::from_pairs(&cloud, &[(2, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.n_edges(), 2);
        assert_eq!(
            g.neighbors(0).collect::<Vec<_>>(),
            vec![(1, 1.0), (2, 2.0)]
        );
        assert!(NeighborhoodGraph::from_pairs(&cloud, &[(0, 0)]).is_err());
        assert!(NeighborhoodGraph::from_pairs(&cloud, &[(0, 7)]).is_err());
    }
}
