//! Distribution of worst turn angles along unconstrained shortest paths.
//!
//! For a fixed landmark, run plain Dijkstra and record, for every
//! reachable vertex, the sharpest turn on its tree path. Buckets over
//! [0, pi] show how sharply paths must bend to reach each vertex; when
//! ground truth is available the same-component and cross-component
//! populations are split out, and their overlap indicates how well a
//! single angle threshold can separate them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::EvalError;
use crate::cloud::PointCloud;
use crate::geometry::turn_angle;
use crate::graph::NeighborhoodGraph;
use crate::io::fmt_f64;

const NO_PARENT: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Unconstrained shortest-path tree: distances, parents, and the order in
/// which vertices were settled.
fn shortest_path_tree(
    graph: &NeighborhoodGraph,
    source: usize,
) -> (Vec<f64>, Vec<usize>, Vec<usize>) {
    let n = graph.n_vertices();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![NO_PARENT; n];
    let mut settled = vec![false; n];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry {
        cost: 0.0,
        vertex: source,
    });
    while let Some(Entry { cost, vertex }) = heap.pop() {
        if settled[vertex] || cost > dist[vertex] {
            continue;
        }
        settled[vertex] = true;
        order.push(vertex);
        for (t, w) in graph.neighbors(vertex) {
            let cand = cost + w;
            if cand < dist[t] {
                dist[t] = cand;
                parent[t] = vertex;
                heap.push(Entry {
                    cost: cand,
                    vertex: t,
                });
            }
        }
    }
    (dist, parent, order)
}

#[derive(Debug, Clone)]
pub struct MaxAngleHistogram {
    pub landmark: usize,
    /// Bucket boundaries over [0, pi], length `n_buckets + 1`.
    pub bucket_edges: Vec<f64>,
    /// Counts over all reachable vertices.
    pub total: Vec<usize>,
    /// Counts split by ground truth, present only when truth was given.
    pub same_component: Option<Vec<usize>>,
    pub cross_component: Option<Vec<usize>>,
    /// Worst turn on the tree path per vertex; `None` if unreachable.
    pub max_angles: Vec<Option<f64>>,
}

/// Histograms the sharpest turn along the shortest path from `landmark`
/// to every reachable vertex. Vertices adjacent to the landmark (paths
/// with no interior vertex) count as turn zero.
pub fn max_angle_histogram(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    landmark: usize,
    n_buckets: usize,
    truth: Option<&[usize]>,
) -> Result<MaxAngleHistogram, EvalError> {
    if graph.n_vertices() != cloud.len() {
        return Err(EvalError::BadInput(format!(
            "graph has {} vertices but cloud has {} points",
            graph.n_vertices(),
            cloud.len()
        )));
    }
    if landmark >= cloud.len() {
        return Err(EvalError::BadInput(format!(
            "landmark {landmark} out of range for {} points",
            cloud.len()
        )));
    }
    if n_buckets == 0 {
        return Err(EvalError::BadInput("need at least one bucket".to_string()));
    }
    if let Some(t) = truth {
        if t.len() != cloud.len() {
            return Err(EvalError::LengthMismatch {
                left: cloud.len(),
                right: t.len(),
            });
        }
    }

    let (dist, parent, order) = shortest_path_tree(graph, landmark);
    let mut max_angles: Vec<Option<f64>> = vec![None; cloud.len()];
    // Settle order guarantees a vertex's parent is processed first, so a
    // single pass propagates the running maximum down the tree.
    for &v in &order {
        if v == landmark {
            max_angles[v] = Some(0.0);
            continue;
        }
        let p = parent[v];
        let inherited = max_angles[p].expect("parent settles before child");
        let grand = parent[p];
        let here = if grand == NO_PARENT {
            0.0
        } else {
            turn_angle(cloud.point(grand), cloud.point(p), cloud.point(v))
                .expect("tree edges have positive length")
        };
        max_angles[v] = Some(inherited.max(here));
    }
    debug_assert!(order.iter().all(|&v| dist[v].is_finite()));

    let edges: Vec<f64> = (0..=n_buckets)
        .map(|i| std::f64::consts::PI * i as f64 / n_buckets as f64)
        .collect();
    let bucket_of = |angle: f64| -> usize {
        let raw = (angle / std::f64::consts::PI * n_buckets as f64).floor() as usize;
        raw.min(n_buckets - 1)
    };
    let mut total = vec![0usize; n_buckets];
    let mut same = truth.map(|_| vec![0usize; n_buckets]);
    let mut cross = truth.map(|_| vec![0usize; n_buckets]);
    for (v, angle) in max_angles.iter().enumerate() {
        let Some(a) = angle else { continue };
        let b = bucket_of(*a);
        total[b] += 1;
        if let Some(t) = truth {
            if t[v] == t[landmark] {
                same.as_mut().unwrap()[b] += 1;
            } else {
                cross.as_mut().unwrap()[b] += 1;
            }
        }
    }
    Ok(MaxAngleHistogram {
        landmark,
        bucket_edges: edges,
        total,
        same_component: same,
        cross_component: cross,
        max_angles,
    })
}

/// Overlap between two histograms with matching buckets: normalize each
/// to mass one and sum the bucket-wise minima. One means identical
/// distributions, zero means disjoint support. Returns zero if either
/// histogram is empty.
pub fn overlap_coefficient(a: &[usize], b: &[usize]) -> f64 {
    let ta: usize = a.iter().sum();
    let tb: usize = b.iter().sum();
    if ta == 0 || tb == 0 {
        return 0.0;
    }
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x as f64 / ta as f64).min(y as f64 / tb as f64))
        .sum()
}

/// Renders the histogram as CSV with one row per (bucket, component).
/// Components: `all`, plus `same` and `cross` when truth was supplied.
pub fn write_histogram_csv(hist: &MaxAngleHistogram) -> String {
    let mut out = String::from("bucket_lo,bucket_hi,count,component\n");
    let mut push = |counts: &[usize], tag: &str| {
        for (i, &c) in counts.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(hist.bucket_edges[i]),
                fmt_f64(hist.bucket_edges[i + 1]),
                c,
                tag
            ));
        }
    };
    push(&hist.total, "all");
    if let Some(same) = &hist.same_component {
        push(same, "same");
    }
    if let Some(cross) = &hist.cross_component {
        push(cross, "cross");
    }
    out
}
