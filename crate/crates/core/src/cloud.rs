//! Point cloud storage: N points in row-major flat layout.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CloudError {
    #[error("point {0} has {1} coordinates, expected {2}")]
    RaggedRow(usize, usize, usize),
    #[error("coordinate ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("cloud is empty")]
    Empty,
}

/// Immutable set of points in R^dim, indexed 0..len.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    data: Vec<f64>,
    dim: usize,
}

impl PointCloud {
    /// Builds a cloud from row-major coordinates. Every coordinate must be
    /// finite and `data.len()` must be a multiple of `dim`.
    pub fn new(data: Vec<f64>, dim: usize) -> Result<Self, CloudError> {
        if dim == 0 || data.is_empty() {
            return Err(CloudError::Empty);
        }
        if data.len() % dim != 0 {
            return Err(CloudError::RaggedRow(
                data.len() / dim,
                data.len() % dim,
                dim,
            ));
        }
        for (i, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(CloudError::NonFinite {
                    row: i / dim,
                    col: i % dim,
                });
            }
        }
        Ok(Self { data, dim })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, CloudError> {
        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(CloudError::RaggedRow(i, r.len(), dim));
            }
        }
        Self::new(rows.concat(), dim)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The raw coordinate buffer, row-major.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.point(i), self.point(j));
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    /// First pair of bitwise-identical points, if any.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        use std::collections::HashMap;
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(self.len());
        for i in 0..self.len() {
            let key: Vec<u64> = self.point(i).iter().map(|v| v.to_bits()).collect();
            match seen.entry(key) {
                std::collections::hash_map::Entry::Occupied(e) => return Some((*e.get(), i)),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(i);
                }
            }
        }
        None
    }

    /// Removes repeated points keeping the first occurrence of each.
    /// Returns the reduced cloud and, for every original index, the index of
    /// its representative in the reduced cloud.
    pub fn deduplicated(&self) -> (Self, Vec<usize>) {
        use std::collections::HashMap;
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(self.len());
        let mut data = Vec::new();
        let mut map = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let key: Vec<u64> = self.point(i).iter().map(|v| v.to_bits()).collect();
            let next = seen.len();
            let idx = *seen.entry(key).or_insert(next);
            if idx == next {
                data.extend_from_slice(self.point(i));
            }
            map.push(idx);
        }
        (
            Self {
                data,
                dim: self.dim,
            },
            map,
        )
    }

    /// Axis-aligned bounding box as (per-axis min, per-axis max).
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.point(0).to_vec();
        let mut hi = lo.clone();
        for p in self.iter().skip(1) {
            for (k, &v) in p.iter().enumerate() {
                lo[k] = lo[k].min(v);
                hi[k] = hi[k].max(v);
            }
        }
        (lo, hi)
    }

    /// Length of the bounding-box diagonal; the scale used to normalize
    /// noise radii into dimensionless noise levels.
    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.iter()
            .zip(&hi)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt()
    }
}
