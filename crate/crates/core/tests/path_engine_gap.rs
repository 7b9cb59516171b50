//! Fixed 18-vertex instance where the cheapest route into a vertex arrives
//! at an inadmissible angle and the only admissible route is a long arc
//! detour. The single-parent greedy search settles the vertex through the
//! cheap arrival and never recovers; the edge-state search does.
//!
//! Geometry: s and v both lie on the circle of radius sqrt(1.25) around
//! (-0.5, 1). A straight chain s - b - v - w runs down the y axis and then
//! right along the x axis, so the turn at v is exactly 90 degrees. A detour
//! chain p1..p14 follows the circle away from s in 15-degree steps; every
//! interior turn on it is 15 degrees except the junction at p14, whose turn
//! is (15 + 23.130102354156) / 2 = 19.065051177078 degrees, the largest
//! turn anywhere on the detour.

use pbc_core::path::{
    brute_force_reachability, default_registry, exact_constrained_dijkstra,
    greedy_constrained_dijkstra, validate_result, ConstraintSpec,
};
use pbc_core::{NeighborhoodGraph, PointCloud};

const S: usize = 0;
const B: usize = 1;
const V: usize = 2;
const W: usize = 3;
const P1: usize = 4;
const P14: usize = 17;

/// Arc length of the admissible detour s -> p1 -> .. -> p14 -> v plus the
/// unit edge v -> w, fourteen 15-degree chords and one closing chord.
const DETOUR_COST_TO_W: f64 = 5.5344038771593804;
const CLOSING_CHORD: f64 = 0.4482877360840268;

fn gap_instance() -> (PointCloud, NeighborhoodGraph) {
    let c = [-0.5, 1.0];
    let r = 1.25_f64.sqrt();
    let phi0 = 1.0_f64.atan2(0.5);
    let step = std::f64::consts::PI / 12.0;

    let mut rows = vec![
        vec![0.0, 2.0],
        vec![0.0, 1.0],
        vec![0.0, 0.0],
        vec![1.0, 0.0],
    ];
    for i in 1..=14 {
        let phi = phi0 + i as f64 * step;
        rows.push(vec![c[0] + r * phi.cos(), c[1] + r * phi.sin()]);
    }
    let cloud = PointCloud::from_rows(&rows).unwrap();

    let mut pairs = vec![(S, B), (B, V), (V, W), (S, P1), (P14, V)];
    for i in P1..P14 {
        pairs.push((i, i + 1));
    }
    let graph = NeighborhoodGraph::from_pairs(&cloud, &pairs).unwrap();
    (cloud, graph)
}

#[test]
fn instance_matches_frozen_geometry() {
    let (cloud, graph) = gap_instance();
    assert_eq!(cloud.len(), 18);
    assert_eq!(graph.n_edges(), 18);

    // s and v sit exactly on the circle; the first detour vertex and the
    // closing chord match values computed at 50-digit precision.
    let p1 = cloud.point(P1);
    assert!((p1[0] - -0.2758561319579866).abs() < 1e-15);
    assert!((p1[1] - 2.0953353488403287).abs() < 1e-15);
    let p14 = cloud.point(P14);
    assert!((p14[0] - -0.4330127018922193).abs() < 1e-15);
    assert!((p14[1] - -0.1160254037844386).abs() < 1e-15);
    assert!((cloud.distance(P14, V) - CLOSING_CHORD).abs() < 1e-15);

    let turn_at_v = pbc_core::geometry::turn_angle(cloud.point(P14), cloud.point(V), cloud.point(W))
        .unwrap()
        .to_degrees();
    assert!((turn_at_v - 15.0).abs() < 1e-12);
    let junction = pbc_core::geometry::turn_angle(
        cloud.point(P14 - 1),
        cloud.point(P14),
        cloud.point(V),
    )
    .unwrap()
    .to_degrees();
    assert!((junction - 19.065051177077989).abs() < 1e-12);
}

#[test]
fn greedy_misses_the_detour_exact_takes_it() {
    let (cloud, graph) = gap_instance();
    let theta = ConstraintSpec::angle(30f64.to_radians()).unwrap();

    let greedy = greedy_constrained_dijkstra(&cloud, &graph, S, &theta).unwrap();
    let exact = exact_constrained_dijkstra(&cloud, &graph, S, &theta).unwrap();
    let brute = brute_force_reachability(&cloud, &graph, S, &theta, 25, None).unwrap();
    for r in [&greedy, &exact, &brute] {
        validate_result(&cloud, &graph, &theta, r).unwrap();
    }

    // Greedy settles v at cost 2 through b and the 90-degree turn onto w
    // then blocks every continuation.
    assert!(greedy.reachable[V]);
    assert_eq!(greedy.cost[V], Some(2.0));
    assert!(!greedy.reachable[W]);

    // The exact engine also reports the cheap arrival cost at v, but still
    // reaches w through the arc.
    assert_eq!(exact.cost[V], Some(2.0));
    assert!(exact.reachable[W]);
    let cost_w = exact.cost[W].unwrap();
    assert!(
        (cost_w - DETOUR_COST_TO_W).abs() <= 1e-12 * DETOUR_COST_TO_W,
        "cost to w: {cost_w}"
    );
    let path_w = exact.path[W].as_ref().unwrap();
    assert_eq!(path_w.len(), 17);
    assert_eq!(path_w[0], S);
    assert_eq!(path_w[1], P1);
    assert_eq!(path_w[15], V);
    assert_eq!(path_w[16], W);

    assert_eq!(brute.reachable, exact.reachable);
    assert!(greedy.subset_of(&exact));

    // Everything except w is reachable by both engines.
    assert_eq!(greedy.n_reachable(), 17);
    assert_eq!(exact.n_reachable(), 18);
}

#[test]
fn tight_bound_blocks_all_engines() {
    let (cloud, graph) = gap_instance();
    let theta = ConstraintSpec::angle(14f64.to_radians()).unwrap();

    // 15-degree interior turns exceed the bound, so the detour dies at p1
    // and the straight chain dies at v.
    let expected = vec![S, B, V, P1];
    for engine in default_registry().iter() {
        let r = engine.reachability(&cloud, &graph, S, &theta).unwrap();
        validate_result(&cloud, &graph, &theta, &r).unwrap();
        let mut got = r.reachable_set();
        got.sort_unstable();
        let mut want = expected.clone();
        want.sort_unstable();
        assert_eq!(got, want, "engine {}", engine.name());
        assert!(!r.reachable[W], "engine {}", engine.name());
    }
}

#[test]
fn loose_bound_reaches_everything() {
    let (cloud, graph) = gap_instance();
    let theta = ConstraintSpec::angle(std::f64::consts::PI - 1e-9).unwrap();

    for engine in default_registry().iter() {
        let r = engine.reachability(&cloud, &graph, S, &theta).unwrap();
        validate_result(&cloud, &graph, &theta, &r).unwrap();
        assert_eq!(r.n_reachable(), 18, "engine {}", engine.name());
    }

    // With the turn at v admissible the straight chain is optimal.
    let exact = exact_constrained_dijkstra(&cloud, &graph, S, &theta).unwrap();
    assert_eq!(exact.cost[W], Some(3.0));
    assert_eq!(exact.path[W].as_ref().unwrap(), &vec![S, B, V, W]);
}

#[test]
fn reachable_sets_grow_with_the_bound() {
    let (cloud, graph) = gap_instance();
    let degrees = [5.0_f64, 14.0, 15.1, 19.1, 30.0, 60.0, 90.0, 179.0];

    let mut previous: Option<Vec<bool>> = None;
    for deg in degrees {
        let theta = ConstraintSpec::angle(deg.to_radians()).unwrap();
        let r = exact_constrained_dijkstra(&cloud, &graph, S, &theta).unwrap();
        if let Some(prev) = &previous {
            for v in 0..cloud.len() {
                assert!(
                    !prev[v] || r.reachable[v],
                    "theta={deg} lost vertex {v} from a smaller bound"
                );
            }
        }
        previous = Some(r.reachable.clone());
    }

    // The junction turn gates w: just below 19.065 degrees the detour is
    // blocked, just above it opens.
    let below = ConstraintSpec::angle(19.0_f64.to_radians()).unwrap();
    let above = ConstraintSpec::angle(19.1_f64.to_radians()).unwrap();
    let r_below = exact_constrained_dijkstra(&cloud, &graph, S, &below).unwrap();
    let r_above = exact_constrained_dijkstra(&cloud, &graph, S, &above).unwrap();
    assert!(!r_below.reachable[W]);
    assert!(r_above.reachable[W]);
}

#[test]
fn dfs_walk_mode_agrees_on_the_gap() {
    let (cloud, graph) = gap_instance();
    // Walks never repeat a directed edge, so twice the edge count bounds
    // every admissible walk.
    let hops = 2 * graph.n_edges();
    for deg in [14.0, 30.0, 179.0] {
        let theta = ConstraintSpec::angle(f64::to_radians(deg)).unwrap();
        let bfs = brute_force_reachability(&cloud, &graph, S, &theta, 25, None).unwrap();
        let dfs = brute_force_reachability(&cloud, &graph, S, &theta, 25, Some(hops)).unwrap();
        assert_eq!(bfs.reachable, dfs.reachable, "theta={deg}");
        validate_result(&cloud, &graph, &theta, &dfs).unwrap();
    }
}
