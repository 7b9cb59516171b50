//! Semi-supervised selection of the turn-angle bound.
//!
//! Given a small labeled subset, the tuner probes a shrinking sequence of
//! angle bounds and keeps the one with the lowest labeled error. The
//! schedule: halve the bound while the error strictly decreases. If the
//! error comes back equal, stop (the bound is already in a flat basin).
//! If it strictly increases, the last halving overshot, so grow from the
//! best bound by factor 4/3 while that keeps strictly improving. The
//! probe budget caps total pipeline runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use super::{run_pbc, ClusterError, PbcConfig};
use crate::cloud::PointCloud;
use crate::eval::misclustering_rate;
use crate::path::ConstraintSpec;

/// One probe of the search: the bound tried, the error on the labeled
/// subset, and whether it beat the best seen so far.
#[derive(Debug, Clone, Copy)]
pub struct TuneStep {
    pub theta: f64,
    pub labeled_error: f64,
    pub improved: bool,
    /// True when clustering collapsed (too few distinct vectors) and the
    /// probe was scored as total error.
    pub degenerate: bool,
}

#[derive(Debug, Clone)]
pub struct TuneOutcome {
    pub best_theta: f64,
    pub best_error: f64,
    pub steps: Vec<TuneStep>,
    /// Indices of the labeled points used for scoring.
    pub labeled: Vec<usize>,
}

/// Draws a per-cluster stratified sample of point indices: at least one
/// point from every ground-truth cluster, `ceil(fraction * size)` from
/// each. Returned ascending.
pub fn stratified_labeled_subset(
    true_labels: &[usize],
    fraction: f64,
    seed: u64,
) -> Result<Vec<usize>, ClusterError> {
    if true_labels.is_empty() {
        return Err(ClusterError::InvalidConfig(
            "cannot tune on an empty label set".to_string(),
        ));
    }
    if !(fraction > 0.0 && fraction <= 1.0) || !fraction.is_finite() {
        return Err(ClusterError::InvalidConfig(format!(
            "labeled fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in true_labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    // Fixed offset keeps this draw decoupled from the landmark draw that
    // uses the same base seed.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA076_1D64_78BD_642F);
    let mut picked = Vec::new();
    for indices in by_label.values() {
        let take = ((fraction * indices.len() as f64).ceil() as usize)
            .max(1)
            .min(indices.len());
        let chosen = rand::seq::index::sample(&mut rng, indices.len(), take);
        picked.extend(chosen.iter().map(|j| indices[j]));
    }
    picked.sort_unstable();
    Ok(picked)
}

fn probe_error(
    cloud: &PointCloud,
    base: &PbcConfig,
    theta: f64,
    labeled: &[usize],
    true_labels: &[usize],
) -> Result<(f64, bool), ClusterError> {
    let mut config = base.clone();
    config.constraint = ConstraintSpec::angle(theta)?;
    let result = match run_pbc(cloud, &config) {
        Ok(r) => r,
        // A collapsed feature matrix means the bound is useless, not that
        // the search itself failed.
        Err(ClusterError::TooFewDistinctVectors { .. }) => return Ok((1.0, true)),
        Err(e) => return Err(e),
    };
    let pred: Vec<usize> = labeled.iter().map(|&i| result.labels[i]).collect();
    let truth: Vec<usize> = labeled.iter().map(|&i| true_labels[i]).collect();
    let report = misclustering_rate(&pred, &truth, None)
        .map_err(|e| ClusterError::InvalidConfig(format!("scoring failed: {e}")))?;
    Ok((1.0 - report.accuracy, false))
}

/// Searches for an angle bound using a small labeled subset, returning
/// the best bound found and the full probe trace.
pub fn tune_constraint(
    cloud: &PointCloud,
    true_labels: &[usize],
    base: &PbcConfig,
    labeled_fraction: f64,
    initial_theta: f64,
    max_probes: usize,
) -> Result<TuneOutcome, ClusterError> {
    if true_labels.len() != cloud.len() {
        return Err(ClusterError::InvalidConfig(format!(
            "{} labels for {} points",
            true_labels.len(),
            cloud.len()
        )));
    }
    if max_probes == 0 {
        return Err(ClusterError::InvalidConfig(
            "probe budget must be at least 1".to_string(),
        ));
    }
    // Validates the starting bound up front.
    ConstraintSpec::angle(initial_theta)?;
    let labeled = stratified_labeled_subset(true_labels, labeled_fraction, base.seed)?;

    let mut steps = Vec::new();
    let (e0, degenerate) = probe_error(cloud, base, initial_theta, &labeled, true_labels)?;
    steps.push(TuneStep {
        theta: initial_theta,
        labeled_error: e0,
        improved: true,
        degenerate,
    });
    let mut best = (initial_theta, e0);
    let mut cursor = initial_theta;
    let mut growing = false;
    while steps.len() < max_probes {
        let next = if growing { cursor * 4.0 / 3.0 } else { cursor * 0.5 };
        if next >= std::f64::consts::PI {
            break;
        }
        let (e, degenerate) = probe_error(cloud, base, next, &labeled, true_labels)?;
        let improved = e < best.1;
        steps.push(TuneStep {
            theta: next,
            labeled_error: e,
            improved,
            degenerate,
        });
        if improved {
            best = (next, e);
            cursor = next;
        } else if !growing && e > best.1 {
            // Overshot while shrinking: retry upward from the best bound.
            growing = true;
            cursor = best.0;
        } else {
            break;
        }
    }
    Ok(TuneOutcome {
        best_theta: best.0,
        best_error: best.1,
        steps,
        labeled,
    })
}
