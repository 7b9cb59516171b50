//! Accuracy as a function of noise amplitude on synthetic datasets.
//!
//! Each sweep point regenerates the dataset at a given noise amplitude
//! with fresh seeds (one per repeat, all distinct, all logged), runs the
//! clustering pipeline, and scores against ground truth with ambiguous
//! points excluded. Runs where clustering degenerates (too few distinct
//! reachability vectors, or every point ambiguous) score zero and are
//! counted separately.

use super::{misclustering_rate, EvalError};
use crate::cluster::{run_pbc, ClusterError, PbcConfig};
use crate::io::fmt_f64;
use crate::synth::{sample_dataset, DatasetSpec};

#[derive(Debug, Clone)]
pub struct SweepRow {
    /// Noise amplitude fed to the generator.
    pub tau: f64,
    /// Mean of tau divided by the clean-surface bounding-box diagonal
    /// across repeats; a scale-free noise level.
    pub level: f64,
    pub mean_accuracy: f64,
    /// Population standard deviation of the per-run accuracies.
    pub std_accuracy: f64,
    pub accuracies: Vec<f64>,
    /// Dataset seed of each run, distinct across the whole sweep.
    pub seeds: Vec<u64>,
    pub n_failed: usize,
}

/// Sweeps noise amplitude over `taus`, with `repeats` independently
/// seeded runs per amplitude.
pub fn noise_sweep(
    spec: &DatasetSpec,
    taus: &[f64],
    config: &PbcConfig,
    repeats: usize,
) -> Result<Vec<SweepRow>, EvalError> {
    if repeats == 0 {
        return Err(EvalError::BadInput("repeats must be at least 1".to_string()));
    }
    if taus.is_empty() {
        return Err(EvalError::BadInput(
            "need at least one noise amplitude".to_string(),
        ));
    }
    for &t in taus {
        if !(t.is_finite() && t >= 0.0) {
            return Err(EvalError::BadInput(format!(
                "noise amplitude must be finite and nonnegative, got {t}"
            )));
        }
    }
    let mut rows = Vec::with_capacity(taus.len());
    let mut counter = 0u64;
    for &tau in taus {
        let mut accuracies = Vec::with_capacity(repeats);
        let mut seeds = Vec::with_capacity(repeats);
        let mut levels = Vec::with_capacity(repeats);
        let mut n_failed = 0usize;
        for _ in 0..repeats {
            counter += 1;
            let run_seed = spec.seed.wrapping_add(counter);
            let mut run_spec = spec.clone();
            run_spec.noise = tau;
            run_spec.seed = run_seed;
            let data = sample_dataset(&run_spec)?;
            levels.push(tau / data.surface.bbox_diagonal());
            let mut run_config = config.clone();
            run_config.seed = run_seed;
            let accuracy = match run_pbc(&data.cloud, &run_config) {
                Ok(result) => {
                    match misclustering_rate(&result.labels, &data.true_labels, Some(&data.ambiguous))
                    {
                        Ok(report) => report.accuracy,
                        Err(EvalError::EmptyScoredSet) => {
                            n_failed += 1;
                            0.0
                        }
                        Err(e) => return Err(e),
                    }
                }
                Err(ClusterError::TooFewDistinctVectors { .. }) => {
                    n_failed += 1;
                    0.0
                }
                Err(e) => return Err(e.into()),
            };
            accuracies.push(accuracy);
            seeds.push(run_seed);
        }
        let n = accuracies.len() as f64;
        let mean = accuracies.iter().sum::<f64>() / n;
        let var = accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n;
        rows.push(SweepRow {
            tau,
            level: levels.iter().sum::<f64>() / n,
            mean_accuracy: mean,
            std_accuracy: var.sqrt(),
            accuracies,
            seeds,
            n_failed,
        });
    }
    Ok(rows)
}

/// One aggregate CSV row per noise amplitude.
pub fn write_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("tau,mean_accuracy,std,n_runs,level,n_failed\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(row.tau),
            fmt_f64(row.mean_accuracy),
            fmt_f64(row.std_accuracy),
            row.accuracies.len(),
            fmt_f64(row.level),
            row.n_failed
        ));
    }
    out
}

/// One CSV row per individual run, including its seed.
pub fn write_sweep_runs_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("tau,run,seed,accuracy\n");
    for row in rows {
        for (r, (&seed, &acc)) in row.seeds.iter().zip(&row.accuracies).enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(row.tau),
                r,
                seed,
                fmt_f64(acc)
            ));
        }
    }
    out
}
