//! Complete-linkage agglomerative clustering over integer distances.
//!
//! Distances are integers (Hamming counts), so linkage updates are exact
//! and the merge sequence is fully determined by the tie-break rule: among
//! all candidate merges, the smallest (distance, lower id, higher id)
//! triple wins, where a cluster's id is the smallest item index it
//! contains. The merged cluster keeps the smaller id. Cluster-to-cluster
//! distances follow the complete-linkage update: after merging a and b,
//! d(ab, x) = max(d(a, x), d(b, x)).

/// One merge: clusters with ids `a` < `b` joined at `distance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeStep {
    pub a: usize,
    pub b: usize,
    pub distance: u32,
}

/// Runs complete linkage on `n` items with pairwise distances given by
/// `dist`, merging until `stop_at` clusters remain. Returns the merge
/// sequence; [`roots_after`] recovers the final partition.
pub fn complete_linkage_merges(
    n: usize,
    dist: &dyn Fn(usize, usize) -> u32,
    stop_at: usize,
) -> Vec<MergeStep> {
    assert!(stop_at >= 1, "cannot merge below one cluster");
    let mut merges = Vec::new();
    if n == 0 || stop_at >= n {
        return merges;
    }
    let mut d = vec![0u32; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = dist(i, j);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    let mut active: Vec<bool> = vec![true; n];
    let mut n_active = n;
    while n_active > stop_at {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in (i + 1)..n {
                if !active[j] {
                    continue;
                }
                let cand = (d[i * n + j], i, j);
                if best.map(|b| cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
        let (distance, a, b) = best.expect("at least two active clusters");
        for x in 0..n {
            if x != a && x != b && active[x] {
                let m = d[a * n + x].max(d[b * n + x]);
                d[a * n + x] = m;
                d[x * n + a] = m;
            }
        }
        active[b] = false;
        n_active -= 1;
        merges.push(MergeStep { a, b, distance });
    }
    merges
}

/// Replays a merge sequence over `n` items and returns each item's final
/// cluster root (the smallest item id in its cluster).
pub fn roots_after(n: usize, merges: &[MergeStep]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for m in merges {
        let ra = find(&mut parent, m.a);
        let rb = find(&mut parent, m.b);
        // Roots keep the smaller id, matching the cluster-id convention.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_three_merges_in_order() {
        // Items 0, 1 are close; item 2 is far from both.
        let dm = vec![vec![0, 1, 10], vec![1, 0, 9], vec![10, 9, 0]];
        let dist = move |i: usize, j: usize| dm[i][j];
        let merges = complete_linkage_merges(3, &dist, 1);
        assert_eq!(
            merges,
            vec![
                MergeStep {
                    a: 0,
                    b: 1,
                    distance: 1
                },
                // Complete linkage: d({0,1}, 2) = max(10, 9) = 10.
                MergeStep {
                    a: 0,
                    b: 2,
                    distance: 10
                },
            ]
        );
        assert_eq!(roots_after(3, &merges[..1]), vec![0, 0, 2]);
        assert_eq!(roots_after(3, &merges), vec![0, 0, 0]);
    }

    #[test]
    fn ties_prefer_lower_ids() {
        // All pairs at distance 5: (0,1) must merge first, then ({0,1},2)
        // and (2,3) tie at 5; ids (0,2) < (2,3) so {0,1} absorbs 2.
        let dist = |_i: usize, _j: usize| 5u32;
        let merges = complete_linkage_merges(4, &dist, 2);
        assert_eq!(
            merges,
            vec![
                MergeStep {
                    a: 0,
                    b: 1,
                    distance: 5
                },
                MergeStep {
                    a: 0,
                    b: 2,
                    distance: 5
                },
            ]
        );
    }

    #[test]
    fn stop_at_bounds() {
        let dist = |i: usize, j: usize| (i as u32).abs_diff(j as u32);
        assert!(complete_linkage_merges(4, &dist, 4).is_empty());
        assert_eq!(complete_linkage_merges(4, &dist, 1).len(), 3);
        assert!(complete_linkage_merges(0, &dist, 1).is_empty());
    }
}
