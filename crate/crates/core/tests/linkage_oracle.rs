//! Reference implementation of complete linkage that keeps explicit member
//! sets and recomputes every cluster distance as a maximum over cross
//! pairs. Integer distances make the comparison exact: the fast
//! implementation must reproduce the oracle's merge sequence verbatim.

use pbc_core::cluster::{cluster_features, complete_linkage_merges, roots_after, FeatureMatrix, MergeStep};
use std::collections::BTreeSet;

fn split_mix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Explicit-member-set complete linkage. A cluster's id is its smallest
/// member; among candidate merges the smallest (distance, id_a, id_b)
/// triple wins and the union keeps the smaller id.
fn oracle_merges(matrix: &[Vec<u32>], stop_at: usize) -> Vec<MergeStep> {
    let n = matrix.len();
    let mut clusters: Vec<Option<BTreeSet<usize>>> =
        (0..n).map(|i| Some(BTreeSet::from([i]))).collect();
    let mut n_active = n;
    let mut merges = Vec::new();
    while n_active > stop_at {
        let mut best: Option<(u32, usize, usize)> = None;
        for a in 0..n {
            let Some(sa) = &clusters[a] else { continue };
            for b in (a + 1)..n {
                let Some(sb) = &clusters[b] else { continue };
                let d = sa
                    .iter()
                    .flat_map(|&x| sb.iter().map(move |&y| matrix[x][y]))
                    .max()
                    .unwrap();
                let cand = (d, a, b);
                if best.map(|cur| cand < cur).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
        let (distance, a, b) = best.unwrap();
        let sb = clusters[b].take().unwrap();
        clusters[a].as_mut().unwrap().extend(sb);
        n_active -= 1;
        merges.push(MergeStep { a, b, distance });
    }
    merges
}

fn oracle_partition(matrix: &[Vec<u32>], stop_at: usize) -> Vec<BTreeSet<usize>> {
    let n = matrix.len();
    let merges = oracle_merges(matrix, stop_at);
    let mut clusters: Vec<Option<BTreeSet<usize>>> =
        (0..n).map(|i| Some(BTreeSet::from([i]))).collect();
    for m in merges {
        let sb = clusters[m.b].take().unwrap();
        clusters[m.a].as_mut().unwrap().extend(sb);
    }
    clusters.into_iter().flatten().collect()
}

fn random_matrix(state: &mut u64, n: usize, max_value: u32) -> Vec<Vec<u32>> {
    let mut m = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (split_mix(state) % (max_value as u64 + 1)) as u32;
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

#[test]
fn merge_sequences_match_oracle_exactly() {
    let mut state = 0x11CE_u64;
    for round in 0..30 {
        let n = 4 + (round % 20);
        // Small value range forces plenty of ties.
        let matrix = random_matrix(&mut state, n, if round % 2 == 0 { 6 } else { 40 });
        for stop_at in [1, 2, 3] {
            if stop_at > n {
                continue;
            }
            let fast = complete_linkage_merges(n, &|i, j| matrix[i][j], stop_at);
            let slow = oracle_merges(&matrix, stop_at);
            assert_eq!(fast, slow, "round {round}: n={n} stop_at={stop_at}");
        }
    }
}

#[test]
fn final_partitions_match_oracle() {
    let mut state = 0x22DF_u64;
    for round in 0..15 {
        let n = 6 + (round % 12);
        let matrix = random_matrix(&mut state, n, 8);
        for k in [2, 4] {
            if k > n {
                continue;
            }
            let merges = complete_linkage_merges(n, &|i, j| matrix[i][j], k);
            let roots = roots_after(n, &merges);

            let mut grouped: Vec<BTreeSet<usize>> = Vec::new();
            let mut root_ids: Vec<usize> = roots.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
            root_ids.sort_unstable();
            for &r in &root_ids {
                grouped.push((0..n).filter(|&i| roots[i] == r).collect());
            }
            let expected = oracle_partition(&matrix, k);
            assert_eq!(grouped, expected, "round {round}: k={k}");
        }
    }
}

#[test]
fn feature_clustering_matches_label_oracle() {
    let mut state = 0x33AB_u64;
    for round in 0..10 {
        let n = 24;
        let m = 7;
        let mut features = FeatureMatrix::new(n, (0..m).collect());
        // A third of the rows duplicate earlier rows so the dedup path is
        // always exercised.
        let mut rows: Vec<Vec<bool>> = Vec::new();
        for i in 0..n {
            let row: Vec<bool> = if i >= 16 {
                rows[(split_mix(&mut state) % 16) as usize].clone()
            } else {
                (0..m).map(|_| split_mix(&mut state) % 2 == 0).collect()
            };
            for (slot, &b) in row.iter().enumerate() {
                features.set(i, slot, b);
            }
            rows.push(row);
        }

        // Oracle: dedup by first occurrence, linkage over representatives,
        // labels numbered by first appearance over point order.
        let mut reps: Vec<usize> = Vec::new();
        let mut group_of: Vec<usize> = Vec::new();
        for i in 0..n {
            match reps.iter().position(|&r| rows[r] == rows[i]) {
                Some(g) => group_of.push(g),
                None => {
                    reps.push(i);
                    group_of.push(reps.len() - 1);
                }
            }
        }
        let distinct = reps.len();
        let matrix: Vec<Vec<u32>> = (0..distinct)
            .map(|a| {
                (0..distinct)
                    .map(|b| {
                        rows[reps[a]]
                            .iter()
                            .zip(&rows[reps[b]])
                            .filter(|(x, y)| x != y)
                            .count() as u32
                    })
                    .collect()
            })
            .collect();
        let k = 3.min(distinct);
        let parts = oracle_partition(&matrix, k);
        let mut expected = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..n {
            let g = group_of[i];
            let part = parts.iter().position(|p| p.contains(&g)).unwrap();
            let hit = expected
                .iter()
                .take(i)
                .zip(0..i)
                .find(|&(_, j)| parts[part].contains(&group_of[j]))
                .map(|(&l, _)| l);
            expected[i] = match hit {
                Some(l) => l,
                None => {
                    next += 1;
                    next - 1
                }
            };
        }

        let outcome = cluster_features(&features, k).unwrap();
        assert_eq!(outcome.distinct_vectors, distinct, "round {round}");
        assert_eq!(outcome.labels, expected, "round {round}");
        assert_eq!(
            outcome.labels.iter().cloned().collect::<BTreeSet<_>>().len(),
            k,
            "round {round}: labels not contiguous"
        );
    }
}
