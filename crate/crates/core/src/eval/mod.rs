//! Scoring clusterings against ground truth, plus diagnostic measurements
//! on neighborhood graphs and noisy datasets.

pub mod assignment;
mod hist;
mod sweep;

pub use assignment::{max_assignment, max_assignment_brute, max_assignment_hungarian};
pub use hist::{max_angle_histogram, overlap_coefficient, write_histogram_csv, MaxAngleHistogram};
pub use sweep::{noise_sweep, write_sweep_csv, write_sweep_runs_csv, SweepRow};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("length mismatch: {left} predicted labels vs {right} reference values")]
    LengthMismatch { left: usize, right: usize },
    #[error("no points left to score after exclusion")]
    EmptyScoredSet,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("dataset stage failed: {0}")]
    Synth(#[from] crate::synth::SynthError),
    #[error("clustering stage failed: {0}")]
    Cluster(#[from] crate::cluster::ClusterError),
}

/// Accuracy of a predicted clustering under the best one-to-one matching
/// of predicted labels to true labels.
#[derive(Debug, Clone)]
pub struct AccuracyReport {
    /// Fraction of scored points whose matched labels agree.
    pub accuracy: f64,
    pub n_scored: usize,
    pub n_excluded: usize,
    /// Chosen (predicted label, true label) pairs, original label values.
    pub matching: Vec<(usize, usize)>,
    /// Distinct predicted labels, ascending: rows of `contingency`.
    pub predicted_labels: Vec<usize>,
    /// Distinct true labels, ascending: columns of `contingency`.
    pub truth_labels: Vec<usize>,
    pub contingency: Vec<Vec<usize>>,
}

impl AccuracyReport {
    pub fn misclustering_rate(&self) -> f64 {
        1.0 - self.accuracy
    }
}

fn index_labels(labels: impl Iterator<Item = usize>) -> (Vec<usize>, std::collections::HashMap<usize, usize>) {
    let mut distinct: Vec<usize> = labels.collect();
    distinct.sort_unstable();
    distinct.dedup();
    let lookup = distinct
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i))
        .collect();
    (distinct, lookup)
}

/// Scores predicted labels against true labels. Labels on either side may
/// be arbitrary (non-contiguous) values. Predicted labels are matched
/// one-to-one to true labels so as to maximize agreement; true clusters
/// left unmatched (when the prediction has fewer clusters) contribute
/// zero correct points. Points flagged in `excluded` are dropped before
/// scoring.
pub fn misclustering_rate(
    predicted: &[usize],
    truth: &[usize],
    excluded: Option<&[bool]>,
) -> Result<AccuracyReport, EvalError> {
    if predicted.len() != truth.len() {
        return Err(EvalError::LengthMismatch {
            left: predicted.len(),
            right: truth.len(),
        });
    }
    if let Some(mask) = excluded {
        if mask.len() != predicted.len() {
            return Err(EvalError::LengthMismatch {
                left: predicted.len(),
                right: mask.len(),
            });
        }
    }
    let keep = |i: usize| excluded.map(|m| !m[i]).unwrap_or(true);
    let scored: Vec<usize> = (0..predicted.len()).filter(|&i| keep(i)).collect();
    if scored.is_empty() {
        return Err(EvalError::EmptyScoredSet);
    }
    let n_excluded = predicted.len() - scored.len();

    let (pred_labels, pred_idx) = index_labels(scored.iter().map(|&i| predicted[i]));
    let (truth_labels, truth_idx) = index_labels(scored.iter().map(|&i| truth[i]));
    let r = pred_labels.len();
    let c = truth_labels.len();
    let mut contingency = vec![vec![0usize; c]; r];
    for &i in &scored {
        contingency[pred_idx[&predicted[i]]][truth_idx[&truth[i]]] += 1;
    }

    // Pad to a square so the assignment is a permutation; padded rows and
    // columns carry zero counts, which is exactly the "unmatched clusters
    // score nothing" rule.
    let side = r.max(c);
    let mut padded = vec![vec![0usize; side]; side];
    for (i, row) in contingency.iter().enumerate() {
        padded[i][..c].copy_from_slice(row);
    }
    let (assign, total) = max_assignment(&padded);
    let matching: Vec<(usize, usize)> = assign
        .iter()
        .enumerate()
        .filter(|&(row, &col)| row < r && col < c)
        .map(|(row, &col)| (pred_labels[row], truth_labels[col]))
        .collect();

    Ok(AccuracyReport {
        accuracy: total as f64 / scored.len() as f64,
        n_scored: scored.len(),
        n_excluded,
        matching,
        predicted_labels: pred_labels,
        truth_labels,
        contingency,
    })
}
