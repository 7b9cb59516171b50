//! Edge-list oracle for graph construction: straightforward quadratic
//! reference implementations of every rule, compared exactly against the
//! built graphs, including the high-dimensional fallback path.

use pbc_core::graph::{build_graph, GraphRule};
use pbc_core::PointCloud;
use std::collections::BTreeSet;

fn split_mix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_cloud(state: &mut u64, n: usize, dim: usize) -> PointCloud {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| (split_mix(state) >> 11) as f64 / (1u64 << 53) as f64)
                .collect()
        })
        .collect();
    PointCloud::from_rows(&rows).unwrap()
}

fn oracle_knn(cloud: &PointCloud, q: usize) -> BTreeSet<(usize, usize)> {
    let n = cloud.len();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        let mut order: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (cloud.distance(i, j), j))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in order.iter().take(q) {
            edges.insert((i.min(j), i.max(j)));
        }
    }
    edges
}

fn oracle_range(cloud: &PointCloud, lo: f64, hi: f64) -> BTreeSet<(usize, usize)> {
    let n = cloud.len();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cloud.distance(i, j);
            if d >= lo && d <= hi {
                edges.insert((i, j));
            }
        }
    }
    edges
}

fn built_edges(cloud: &PointCloud, rule: GraphRule) -> BTreeSet<(usize, usize)> {
    let graph = build_graph(cloud, &rule.into()).unwrap();
    let mut edges = BTreeSet::new();
    for (i, j, w) in graph.edge_list() {
        // Weight must be the Euclidean distance of its endpoints.
        assert!((w - cloud.distance(i, j)).abs() < 1e-15);
        edges.insert((i.min(j), i.max(j)));
    }
    edges
}

#[test]
fn knn_union_matches_oracle() {
    let mut state = 0x1234_u64;
    for round in 0..4 {
        let cloud = random_cloud(&mut state, 100, 3);
        for q in [1, 5, 9] {
            assert_eq!(
                built_edges(&cloud, GraphRule::Knn { q }),
                oracle_knn(&cloud, q),
                "round {round}: q={q}"
            );
        }
    }
}

#[test]
fn eps_ball_matches_oracle_and_grows_with_radius() {
    let mut state = 0x5678_u64;
    let cloud = random_cloud(&mut state, 100, 3);
    let mut previous = BTreeSet::new();
    for epsilon in [0.15, 0.25, 0.4, 0.6] {
        let got = built_edges(&cloud, GraphRule::EpsBall { epsilon });
        assert_eq!(got, oracle_range(&cloud, 0.0, epsilon), "epsilon={epsilon}");
        assert!(
            previous.is_subset(&got),
            "edges lost when epsilon grew to {epsilon}"
        );
        previous = got;
    }
}

#[test]
fn annulus_is_eps_ball_minus_short_edges() {
    let mut state = 0x9ABC_u64;
    let cloud = random_cloud(&mut state, 100, 3);
    let epsilon = 0.4;
    let annulus = built_edges(&cloud, GraphRule::annulus(epsilon));
    assert_eq!(annulus, oracle_range(&cloud, 0.5 * epsilon, epsilon));

    let ball = built_edges(&cloud, GraphRule::EpsBall { epsilon });
    assert!(annulus.is_subset(&ball));
    let removed: BTreeSet<_> = ball.difference(&annulus).cloned().collect();
    for &(i, j) in &removed {
        assert!(cloud.distance(i, j) < 0.5 * epsilon);
    }

    let custom = built_edges(
        &cloud,
        GraphRule::Annulus {
            epsilon,
            inner_fraction: 0.75,
        },
    );
    assert_eq!(custom, oracle_range(&cloud, 0.75 * epsilon, epsilon));
}

#[test]
fn high_dimensional_fallback_matches_oracle() {
    // 20 ambient dimensions forces the scan that bypasses the tree index.
    let mut state = 0xDEF0_u64;
    let cloud = random_cloud(&mut state, 60, 20);
    assert_eq!(
        built_edges(&cloud, GraphRule::Knn { q: 4 }),
        oracle_knn(&cloud, 4)
    );
    // Points in a 20-cube are far apart; pick a radius that keeps edges.
    assert_eq!(
        built_edges(&cloud, GraphRule::EpsBall { epsilon: 1.6 }),
        oracle_range(&cloud, 0.0, 1.6)
    );
}

#[test]
fn low_and_high_dimension_agree_on_shared_coordinates() {
    // Same 60 points embedded in 3 and in 19 dims (padding zeros); edge
    // sets must match because distances do.
    let mut state = 0xACE1_u64;
    let base = random_cloud(&mut state, 60, 3);
    let padded_rows: Vec<Vec<f64>> = (0..base.len())
        .map(|i| {
            let mut row = base.point(i).to_vec();
            row.resize(19, 0.0);
            row
        })
        .collect();
    let padded = PointCloud::from_rows(&padded_rows).unwrap();
    for rule in [GraphRule::Knn { q: 5 }, GraphRule::EpsBall { epsilon: 0.3 }] {
        assert_eq!(built_edges(&base, rule), built_edges(&padded, rule));
    }
}

#[test]
fn construction_is_deterministic() {
    let mut state = 0x7777_u64;
    let cloud = random_cloud(&mut state, 80, 2);
    let a = build_graph(&cloud, &GraphRule::Knn { q: 5 }.into()).unwrap();
    let b = build_graph(&cloud, &GraphRule::Knn { q: 5 }.into()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.edge_list(), b.edge_list());
}

#[test]
fn boundary_distances_are_inclusive() {
    // Unit grid: axis neighbors at distance exactly 1.
    let rows: Vec<Vec<f64>> = (0..3)
        .flat_map(|x| (0..3).map(move |y| vec![x as f64, y as f64]))
        .collect();
    let cloud = PointCloud::from_rows(&rows).unwrap();

    let ball = built_edges(&cloud, GraphRule::EpsBall { epsilon: 1.0 });
    assert_eq!(ball.len(), 12, "axis edges of a 3x3 grid");

    // Annulus at inner_fraction 0.5 with epsilon 2: keeps d = 1 exactly at
    // the inner boundary and d = 2 exactly at the outer.
    let annulus = built_edges(
        &cloud,
        GraphRule::Annulus {
            epsilon: 2.0,
            inner_fraction: 0.5,
        },
    );
    assert_eq!(annulus, oracle_range(&cloud, 1.0, 2.0));
    assert!(annulus.contains(&(0, 1)), "inner boundary d = 1 kept");
    assert!(annulus.contains(&(0, 2)), "outer boundary d = 2 kept");
}
