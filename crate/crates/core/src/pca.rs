//! Principal component analysis for projecting clouds to lower
//! dimension, mainly so higher-dimensional data can be fed through the
//! pipeline and plotted.

use nalgebra::DMatrix;

use crate::cloud::PointCloud;

#[derive(Debug, thiserror::Error)]
pub enum PcaError {
    #[error("component count must lie in 1..={dim}, got {p}")]
    BadComponentCount { p: usize, dim: usize },
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("model expects dimension {expected}, cloud has {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A fitted projection: `components[j]` is the j-th axis in the original
/// space, unit length, ordered by decreasing explained variance.
#[derive(Debug, Clone)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    pub components: Vec<Vec<f64>>,
    pub explained_variance: Vec<f64>,
    /// Fraction of total variance captured by each kept component.
    pub explained_variance_ratio: Vec<f64>,
}

/// Fits a PCA with `p` components. Axis signs are fixed by making the
/// coordinate of largest magnitude positive (first such coordinate on
/// ties), so the fit is deterministic.
pub fn fit_pca(cloud: &PointCloud, p: usize) -> Result<PcaModel, PcaError> {
    let n = cloud.len();
    let dim = cloud.dim();
    if n < 2 {
        return Err(PcaError::TooFewPoints(n));
    }
    if p == 0 || p > dim {
        return Err(PcaError::BadComponentCount { p, dim });
    }
    let mut mean = vec![0.0; dim];
    for point in cloud.iter() {
        for (m, &x) in mean.iter_mut().zip(point) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut cov = DMatrix::<f64>::zeros(dim, dim);
    for point in cloud.iter() {
        for a in 0..dim {
            let da = point[a] - mean[a];
            for b in a..dim {
                cov[(a, b)] += da * (point[b] - mean[b]);
            }
        }
    }
    let denom = (n - 1) as f64;
    for a in 0..dim {
        for b in a..dim {
            let v = cov[(a, b)] / denom;
            cov[(a, b)] = v;
            cov[(b, a)] = v;
        }
    }
    let eigen = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .total_cmp(&eigen.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let total: f64 = eigen.eigenvalues.iter().map(|&l| l.max(0.0)).sum();
    let mut components = Vec::with_capacity(p);
    let mut explained = Vec::with_capacity(p);
    let mut ratios = Vec::with_capacity(p);
    for &idx in order.iter().take(p) {
        let mut axis: Vec<f64> = eigen.eigenvectors.column(idx).iter().copied().collect();
        let lead = (0..dim)
            .max_by(|&a, &b| {
                axis[a]
                    .abs()
                    .total_cmp(&axis[b].abs())
                    .then(b.cmp(&a))
            })
            .unwrap();
        if axis[lead] < 0.0 {
            for x in &mut axis {
                *x = -*x;
            }
        }
        let lambda = eigen.eigenvalues[idx].max(0.0);
        explained.push(lambda);
        ratios.push(if total > 0.0 { lambda / total } else { 0.0 });
        components.push(axis);
    }
    Ok(PcaModel {
        mean,
        components,
        explained_variance: explained,
        explained_variance_ratio: ratios,
    })
}

/// Projects a cloud onto the model's axes.
pub fn transform(model: &PcaModel, cloud: &PointCloud) -> Result<PointCloud, PcaError> {
    if cloud.dim() != model.mean.len() {
        return Err(PcaError::DimensionMismatch {
            expected: model.mean.len(),
            got: cloud.dim(),
        });
    }
    let rows: Vec<Vec<f64>> = cloud
        .iter()
        .map(|point| {
            model
                .components
                .iter()
                .map(|axis| {
                    point
                        .iter()
                        .zip(axis)
                        .zip(&model.mean)
                        .map(|((&x, &a), &m)| (x - m) * a)
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(PointCloud::from_rows(&rows).expect("projection of finite data is finite"))
}
