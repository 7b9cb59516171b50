//! Brute-force reachability oracle for small instances.
//!
//! Two search modes, both exhaustive over admissible walks that never
//! repeat a directed edge (a walk that repeats one can be shortened to an
//! admissible walk that does not, so the restriction loses nothing):
//!
//! * unlimited hops: breadth-first traversal of directed-edge states;
//! * capped hops: depth-first enumeration of whole walks up to `max_hops`
//!   edges, a deliberately dumber search used to cross-check the former on
//!   tiny graphs.
//!
//! Costs and paths are valid but not necessarily minimal; this engine
//! answers "which vertices are reachable at all", which is what the oracle
//! comparisons need. Instances above the vertex cap are refused.

use super::{check_instance, ConstraintSpec, PathEngine, PathError, ReachabilityResult};
use crate::cloud::PointCloud;
use crate::graph::NeighborhoodGraph;
use std::collections::VecDeque;

/// Default largest instance the brute-force engine accepts.
pub const DEFAULT_SMALL_INSTANCE_CAP: usize = 25;

pub fn brute_force_reachability(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    source: usize,
    constraint: &ConstraintSpec,
    cap: usize,
    max_hops: Option<usize>,
) -> Result<ReachabilityResult, PathError> {
    check_instance(cloud, graph, source, constraint)?;
    let n = graph.n_vertices();
    if n > cap {
        return Err(PathError::InstanceTooLarge { n, cap });
    }
    match max_hops {
        None => Ok(bfs_edge_states(cloud, graph, source, constraint)),
        Some(h) => Ok(enumerate_walks(cloud, graph, source, constraint, h)),
    }
}

/// Directed edges in slot form, mirroring the CSR layout.
struct Slots {
    from: Vec<usize>,
    to: Vec<usize>,
    weight: Vec<f64>,
    start: Vec<usize>,
}

fn index_slots(graph: &NeighborhoodGraph) -> Slots {
    let n = graph.n_vertices();
    let mut s = Slots {
        from: Vec::new(),
        to: Vec::new(),
        weight: Vec::new(),
        start: Vec::with_capacity(n + 1),
    };
    s.start.push(0);
    for v in 0..n {
        for (u, w) in graph.neighbors(v) {
            s.from.push(v);
            s.to.push(u);
            s.weight.push(w);
        }
        s.start.push(s.to.len());
    }
    s
}

fn empty_result(n: usize, source: usize) -> ReachabilityResult {
    let mut r = ReachabilityResult {
        source,
        reachable: vec![false; n],
        cost: vec![None; n],
        path: vec![None; n],
    };
    r.reachable[source] = true;
    r.cost[source] = Some(0.0);
    r.path[source] = Some(Vec::new());
    r
}

fn bfs_edge_states(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    source: usize,
    constraint: &ConstraintSpec,
) -> ReachabilityResult {
    const SEEDED: usize = usize::MAX;
    let n = graph.n_vertices();
    let slots = index_slots(graph);
    let m = slots.to.len();
    let mut seen = vec![false; m];
    let mut pred = vec![SEEDED; m];
    let mut first_slot: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();

    for k in slots.start[source]..slots.start[source + 1] {
        seen[k] = true;
        pred[k] = SEEDED;
        queue.push_back(k);
    }
    while let Some(k) = queue.pop_front() {
        let v = slots.to[k];
        if first_slot[v].is_none() {
            first_slot[v] = Some(k);
        }
        let u = slots.from[k];
        for k2 in slots.start[v]..slots.start[v + 1] {
            if seen[k2] {
                continue;
            }
            let w = slots.to[k2];
            if constraint.passes(cloud.point(u), cloud.point(v), cloud.point(w)) {
                seen[k2] = true;
                pred[k2] = k;
                queue.push_back(k2);
            }
        }
    }

    let mut result = empty_result(n, source);
    for v in 0..n {
        if v == source {
            continue;
        }
        let Some(last) = first_slot[v] else { continue };
        let mut rev = vec![slots.to[last]];
        let mut k = last;
        loop {
            rev.push(slots.from[k]);
            if pred[k] == SEEDED {
                break;
            }
            k = pred[k];
        }
        rev.reverse();
        let cost = rev
            .windows(2)
            .map(|e| graph.edge_weight(e[0], e[1]).unwrap())
            .sum();
        result.reachable[v] = true;
        result.cost[v] = Some(cost);
        result.path[v] = Some(rev);
    }
    result
}

fn enumerate_walks(
    cloud: &PointCloud,
    graph: &NeighborhoodGraph,
    source: usize,
    constraint: &ConstraintSpec,
    max_hops: usize,
) -> ReachabilityResult {
    let n = graph.n_vertices();
    let slots = index_slots(graph);
    let mut used = vec![false; slots.to.len()];
    let mut walk = vec![source];
    let mut found: Vec<Option<Vec<usize>>> = vec![None; n];
    dfs(
        cloud,
        &slots,
        constraint,
        max_hops,
        &mut used,
        &mut walk,
        &mut found,
    );

    let mut result = empty_result(n, source);
    for v in 0..n {
        if v == source {
            continue;
        }
        if let Some(path) = &found[v] {
            let cost = path
                .windows(2)
                .map(|e| graph.edge_weight(e[0], e[1]).unwrap())
                .sum();
            result.reachable[v] = true;
            result.cost[v] = Some(cost);
            result.path[v] = Some(path.clone());
        }
    }
    result
}

fn dfs(
    cloud: &PointCloud,
    slots: &Slots,
    constraint: &ConstraintSpec,
    hops_left: usize,
    used: &mut [bool],
    walk: &mut Vec<usize>,
    found: &mut [Option<Vec<usize>>],
) {
    if hops_left == 0 {
        return;
    }
    let v = *walk.last().unwrap();
    for k in slots.start[v]..slots.start[v + 1] {
        if used[k] {
            continue;
        }
        let w = slots.to[k];
        if walk.len() >= 2 {
            let u = walk[walk.len() - 2];
            if !constraint.passes(cloud.point(u), cloud.point(v), cloud.point(w)) {
                continue;
            }
        }
        used[k] = true;
        walk.push(w);
        if found[w].is_none() {
            found[w] = Some(walk.clone());
        }
        dfs(cloud, slots, constraint, hops_left - 1, used, walk, found);
        walk.pop();
        used[k] = false;
    }
}

/// Exhaustive small-instance engine; registered as `"brute-force"`.
pub struct BruteForceEngine {
    pub cap: usize,
    pub max_hops: Option<usize>,
}

impl Default for BruteForceEngine {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SMALL_INSTANCE_CAP,
            max_hops: None,
        }
    }
}

impl PathEngine for BruteForceEngine {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn describe(&self) -> &'static str {
        "exhaustive search over admissible walks; ground truth for small instances"
    }

    fn reachability(
        &self,
        cloud: &PointCloud,
        graph: &NeighborhoodGraph,
        source: usize,
        constraint: &ConstraintSpec,
    ) -> Result<ReachabilityResult, PathError> {
        brute_force_reachability(cloud, graph, source, constraint, self.cap, self.max_hops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphRule};

    fn right_triangle() -> (PointCloud, NeighborhoodGraph) {
        // Chain 0 - 1 - 2 with a 90-degree turn at vertex 1; the hypotenuse
        // pair (0, 2) is out of epsilon range.
        let cloud = PointCloud::from_rows(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        let g = build_graph(&cloud, &GraphRule::EpsBall { epsilon: 1.0 }.into()).unwrap();
        (cloud, g)
    }

    #[test]
    fn right_turn_blocks_under_45_degrees() {
        let (cloud, g) = right_triangle();
        let c = ConstraintSpec::angle(45f64.to_radians()).unwrap();
        let r = brute_force_reachability(&cloud, &g, 0, &c, 25, None).unwrap();
        assert_eq!(r.reachable_set(), vec![0, 1]);
        // From the corner vertex both ends are one hop away.
        let r1 = brute_force_reachability(&cloud, &g, 1, &c, 25, None).unwrap();
        assert_eq!(r1.reachable_set(), vec![0, 1, 2]);
    }

    #[test]
    fn both_modes_agree() {
        let (cloud, g) = right_triangle();
        for deg in [20.0, 45.0, 95.0, 170.0] {
            let c = ConstraintSpec::angle(f64::to_radians(deg)).unwrap();
            for s in 0..3 {
                let a = brute_force_reachability(&cloud, &g, s, &c, 25, None).unwrap();
                let b = brute_force_reachability(&cloud, &g, s, &c, 25, Some(10)).unwrap();
                assert_eq!(a.reachable, b.reachable, "theta={deg} source={s}");
            }
        }
    }

    #[test]
    fn refuses_large_instances() {
        let rows: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64, 0.0]).collect();
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let g = build_graph(&cloud, &GraphRule::EpsBall { epsilon: 1.1 }.into()).unwrap();
        let c = ConstraintSpec::angle(1.0).unwrap();
        assert_eq!(
            brute_force_reachability(&cloud, &g, 0, &c, 25, None),
            Err(PathError::InstanceTooLarge { n: 30, cap: 25 })
        );
    }

    #[test]
    fn hop_cap_limits_range() {
        let rows: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, 0.0]).collect();
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let g = build_graph(&cloud, &GraphRule::EpsBall { epsilon: 1.1 }.into()).unwrap();
        let c = ConstraintSpec::angle(1.0).unwrap();
        let r = brute_force_reachability(&cloud, &g, 0, &c, 25, Some(2)).unwrap();
        assert_eq!(r.reachable_set(), vec![0, 1, 2]);
    }
}
