//! Maximum-weight assignment between predicted and true cluster labels.
//!
//! Small instances are solved by exhaustive permutation search in
//! lexicographic order (ties keep the lexicographically smallest
//! permutation). Larger instances use the O(n^3) Hungarian algorithm with
//! potentials. Both return the same optimal total; only the tie choice
//! among equally good permutations may differ.

/// Largest matrix side handled by the exhaustive search inside
/// [`max_assignment`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Exhaustive maximum assignment. Returns (row to column mapping, total).
pub fn max_assignment_brute(matrix: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = matrix.len();
    assert!(n <= 10, "factorial search capped at 10x10");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best_perm = perm.clone();
    let mut best_total = score(matrix, &perm);
    while next_permutation(&mut perm) {
        let total = score(matrix, &perm);
        if total > best_total {
            best_total = total;
            best_perm = perm.clone();
        }
    }
    (best_perm, best_total)
}

fn score(matrix: &[Vec<usize>], perm: &[usize]) -> usize {
    perm.iter().enumerate().map(|(r, &c)| matrix[r][c]).sum()
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Hungarian algorithm maximum assignment. Returns (row to column
/// mapping, total). Internally minimizes cost = max_entry - value.
pub fn max_assignment_hungarian(matrix: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = matrix.len();
    if n == 0 {
        return (Vec::new(), 0);
    }
    let top = matrix
        .iter()
        .flat_map(|row| row.iter())
        .copied()
        .max()
        .unwrap_or(0) as i64;
    let cost: Vec<Vec<i64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| top - v as i64).collect())
        .collect();
    let assign = min_cost_assignment(&cost);
    let total = assign.iter().enumerate().map(|(r, &c)| matrix[r][c]).sum();
    (assign, total)
}

/// Minimum-cost perfect matching on a square cost matrix via shortest
/// augmenting paths with dual potentials. Indices shifted by one so slot
/// zero can hold the row being inserted.
fn min_cost_assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    // Unvisited sentinel entries stay effectively infinite.
                    minv[j] = minv[j].saturating_sub(delta);
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        if matched_row[j] > 0 {
            assign[matched_row[j] - 1] = j - 1;
        }
    }
    assign
}

/// Maximum assignment, dispatching on size: exhaustive up to
/// [`BRUTE_FORCE_LIMIT`], Hungarian beyond.
pub fn max_assignment(matrix: &[Vec<usize>]) -> (Vec<usize>, usize) {
    if matrix.len() <= BRUTE_FORCE_LIMIT {
        max_assignment_brute(matrix)
    } else {
        max_assignment_hungarian(matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_dominant_matrix_picks_diagonal() {
        let m = vec![vec![5, 1, 0], vec![0, 4, 2], vec![1, 0, 7]];
        let (perm_b, total_b) = max_assignment_brute(&m);
        let (perm_h, total_h) = max_assignment_hungarian(&m);
        assert_eq!(perm_b, vec![0, 1, 2]);
        assert_eq!(total_b, 16);
        assert_eq!(perm_h, vec![0, 1, 2]);
        assert_eq!(total_h, 16);
    }

    #[test]
    fn off_diagonal_optimum() {
        // Best total is 9 + 9 via the anti-diagonal.
        let m = vec![vec![1, 9], vec![9, 1]];
        let (perm, total) = max_assignment(&m);
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(total, 18);
    }

    #[test]
    fn hungarian_matches_brute_on_random_matrices() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize % 21
        };
        for n in 2..=7 {
            for _ in 0..30 {
                let m: Vec<Vec<usize>> =
                    (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let (_, tb) = max_assignment_brute(&m);
                let (_, th) = max_assignment_hungarian(&m);
                assert_eq!(tb, th, "totals diverged on {m:?}");
            }
        }
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(max_assignment(&[]), (vec![], 0));
        assert_eq!(max_assignment(&[vec![3]]), (vec![0], 3));
    }
}
