//! Greedy single-label constrained Dijkstra.
//!
//! Each vertex keeps a single tentative parent. When a vertex settles, its
//! parent is frozen and relaxation of each neighbor is filtered through the
//! triplet (parent, vertex, neighbor). Settled vertices are never revisited,
//! so a vertex that settles via an approach direction that cannot be
//! extended blocks other approach directions for good. That makes the
//! engine fast and its output admissible, but incomplete: see the `exact`
//! engine for the complete construction.

use super::{check_instance, ConstraintSpec, PathEngine, PathError, ReachabilityResult};
use crate::cloud::PointCloud;
use crate::graph::NeighborhoodGraph;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const NO_PARENT: usize = usize::MAX;

#[derive(PartialEq)]
struct Entry {
    cost: f64,
    vertex: usize,
    parent: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed (cost, vertex, parent) order turns the std max-heap into
        // a deterministic min-heap.
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.vertex.cmp(&self.vertex))
            .then_with(|| other.parent.cmp(&self.parent))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn greedy_constrained_dijkstra(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    source: usize,
    constraint: &ConstraintSpec,
) -> Result<ReachabilityResult, PathError> {
    check_instance(cloud, graph, source, constraint)?;
    let n = graph.n_vertices();
    let mut cost = vec![f64::INFINITY; n];
    let mut parent = vec![NO_PARENT; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    cost[source] = 0.0;
    heap.push(Entry {
        cost: 0.0,
        vertex: source,
        parent: NO_PARENT,
    });

    while let Some(e) = heap.pop() {
        let t = e.vertex;
        if settled[t] || e.cost > cost[t] {
            continue;
        }
        settled[t] = true;
        let prev = parent[t];
        for (i, w) in graph.neighbors(t) {
            if settled[i] {
                continue;
            }
            if prev != NO_PARENT
                && !constraint.passes(cloud.point(prev), cloud.point(t), cloud.point(i))
            {
                continue;
            }
            let cand = cost[t] + w;
            if cand < cost[i] {
                cost[i] = cand;
                parent[i] = t;
                heap.push(Entry {
                    cost: cand,
                    vertex: i,
                    parent: t,
                });
            }
        }
    }

    let mut result = ReachabilityResult {
        source,
        reachable: settled.clone(),
        cost: vec![None; n],
        path: vec![None; n],
    };
    result.cost[source] = Some(0.0);
    result.path[source] = Some(Vec::new());
    for v in 0..n {
        if v == source || !settled[v] {
            continue;
        }
        let mut rev = vec![v];
        let mut cur = v;
        while parent[cur] != NO_PARENT {
            cur = parent[cur];
            rev.push(cur);
        }
        rev.reverse();
        result.cost[v] = Some(cost[v]);
        result.path[v] = Some(rev);
    }
    Ok(result)
}

/// The single-parent greedy engine; registered as `"greedy"`.
pub struct GreedyEngine;

impl PathEngine for GreedyEngine {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn describe(&self) -> &'static str {
        "single-parent constrained Dijkstra; fast, may under-report reachability"
    }

    fn reachability(
        &self,
        cloud: &PointCloud,
        graph: &NeighborhoodGraph,
        source: usize,
        constraint: &ConstraintSpec,
    ) -> Result<ReachabilityResult, PathError> {
        greedy_constrained_dijkstra(cloud, graph, source, constraint)
    }
}
