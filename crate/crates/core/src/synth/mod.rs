//! Synthetic datasets drawn from intersecting manifold arrangements.
//!
//! A dataset is described by a shape name, a point count, optional
//! mixture weights over the shape's components, a noise amplitude, and a
//! seed. Sampling draws a component per point, a uniform surface point on
//! it, and adds a uniform perturbation from the ball of radius `noise`.
//! Points that land close to an intersection of two components are
//! flagged ambiguous, since no clustering method can attribute them
//! reliably.

pub(crate) mod curves;
pub mod shapes;

use std::sync::Arc;

use once_cell::sync::Lazy;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloud::PointCloud;
use crate::graph::kdtree::KdTree;

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("no shape named {name:?}; available: {available:?}")]
    UnknownShape {
        name: String,
        available: Vec<&'static str>,
    },
    #[error("invalid field {field}: {reason}")]
    BadField { field: &'static str, reason: String },
}

/// A fixed arrangement of manifold components that can be sampled and
/// queried for distances.
pub trait ManifoldShape: Send + Sync {
    fn name(&self) -> &'static str;
    /// One-line human description for listings.
    fn describe(&self) -> &'static str;
    fn ambient_dim(&self) -> usize;
    fn n_components(&self) -> usize;
    /// Uniform (in arclength or area) draw from one component.
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64>;
    /// Distance from a point to one component's set.
    fn surface_distance(&self, component: usize, point: &[f64]) -> f64;
    /// Distance from a point to the locus where components meet;
    /// infinity when they never do.
    fn intersection_distance(&self, point: &[f64]) -> f64;
}

/// Name-keyed shape collection.
pub struct ShapeRegistry {
    entries: Vec<Arc<dyn ManifoldShape>>,
}

impl ShapeRegistry {
    pub fn empty() -> Self {
        ShapeRegistry {
            entries: Vec::new(),
        }
    }

    /// Adds a shape, replacing any existing entry with the same name.
    pub fn register(&mut self, shape: Arc<dyn ManifoldShape>) {
        self.entries.retain(|s| s.name() != shape.name());
        self.entries.push(shape);
    }

    pub fn find(&self, name: &str) -> Option<Arc<dyn ManifoldShape>> {
        self.entries.iter().find(|s| s.name() == name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn ManifoldShape>> {
        self.entries.iter()
    }
}

static DEFAULT_SHAPES: Lazy<ShapeRegistry> = Lazy::new(|| {
    let mut registry = ShapeRegistry::empty();
    registry.register(Arc::new(shapes::TwoSpirals::new()));
    registry.register(Arc::new(shapes::RoseAndCircle::new()));
    registry.register(Arc::new(shapes::TwoSpheres));
    registry.register(Arc::new(shapes::ThreePlanes));
    registry.register(Arc::new(shapes::FiveSegments));
    registry.register(Arc::new(shapes::ConeAndPlane));
    registry.register(Arc::new(shapes::RollAndPlane::new()));
    registry.register(Arc::new(shapes::DollarPlaneRoll::new()));
    registry
});

/// The built-in shapes.
pub fn default_shape_registry() -> &'static ShapeRegistry {
    &DEFAULT_SHAPES
}

/// Full recipe for one synthetic dataset.
#[derive(Debug, Clone)]
pub struct DatasetSpec {
    pub name: String,
    pub n_points: usize,
    /// Mixture weights over components; `None` means uniform. Must sum
    /// to one.
    pub weights: Option<Vec<f64>>,
    /// Radius of the uniform perturbation ball.
    pub noise: f64,
    pub seed: u64,
    /// Distance to an intersection below which a point is flagged
    /// ambiguous; `None` derives `2 * noise` plus the median
    /// nearest-neighbor spacing.
    pub ambiguity_radius: Option<f64>,
}

impl DatasetSpec {
    pub fn new(name: impl Into<String>, n_points: usize, noise: f64, seed: u64) -> Self {
        DatasetSpec {
            name: name.into(),
            n_points,
            weights: None,
            noise,
            seed,
            ambiguity_radius: None,
        }
    }
}

/// A sampled dataset with ground truth attached.
#[derive(Debug, Clone)]
pub struct LabeledCloud {
    /// Noisy observed points.
    pub cloud: PointCloud,
    /// The same points before perturbation.
    pub surface: PointCloud,
    pub true_labels: Vec<usize>,
    /// Per-point flag: within the ambiguity radius of an intersection.
    pub ambiguous: Vec<bool>,
    /// The radius actually used for the flag.
    pub ambiguity_radius: f64,
}

fn validated_weights(
    shape: &dyn ManifoldShape,
    weights: &Option<Vec<f64>>,
) -> Result<Vec<f64>, SynthError> {
    let k = shape.n_components();
    match weights {
        None => Ok(vec![1.0 / k as f64; k]),
        Some(w) => {
            if w.len() != k {
                return Err(SynthError::BadField {
                    field: "weights",
                    reason: format!("{} entries for {} components", w.len(), k),
                });
            }
            if w.iter().any(|&x| !x.is_finite() || x < 0.0) {
                return Err(SynthError::BadField {
                    field: "weights",
                    reason: "entries must be finite and nonnegative".to_string(),
                });
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(SynthError::BadField {
                    field: "weights",
                    reason: format!("must sum to 1, got {total}"),
                });
            }
            Ok(w.clone())
        }
    }
}

/// Median distance to the nearest other point; zero for fewer than two
/// points.
pub fn median_nn_spacing(cloud: &PointCloud) -> f64 {
    if cloud.len() < 2 {
        return 0.0;
    }
    let tree = KdTree::build(cloud);
    let mut spacings: Vec<f64> = (0..cloud.len())
        .map(|i| {
            tree.k_nearest(i, 1)
                .first()
                .map(|&(_, d)| d)
                .unwrap_or(0.0)
        })
        .collect();
    spacings.sort_by(f64::total_cmp);
    let n = spacings.len();
    if n % 2 == 1 {
        spacings[n / 2]
    } else {
        0.5 * (spacings[n / 2 - 1] + spacings[n / 2])
    }
}

/// Samples a dataset according to `spec`. Fixed spec gives identical
/// output.
pub fn sample_dataset(spec: &DatasetSpec) -> Result<LabeledCloud, SynthError> {
    let registry = default_shape_registry();
    let shape = registry
        .find(&spec.name)
        .ok_or_else(|| SynthError::UnknownShape {
            name: spec.name.clone(),
            available: registry.names(),
        })?;
    if spec.n_points == 0 {
        return Err(SynthError::BadField {
            field: "n_points",
            reason: "must be at least 1".to_string(),
        });
    }
    if !spec.noise.is_finite() || spec.noise < 0.0 {
        return Err(SynthError::BadField {
            field: "noise",
            reason: format!("must be finite and nonnegative, got {}", spec.noise),
        });
    }
    if let Some(r) = spec.ambiguity_radius {
        if !r.is_finite() || r < 0.0 {
            return Err(SynthError::BadField {
                field: "ambiguity_radius",
                reason: format!("must be finite and nonnegative, got {r}"),
            });
        }
    }
    let weights = validated_weights(&*shape, &spec.weights)?;
    let mut cum = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for &w in &weights {
        acc += w;
        cum.push(acc);
    }

    let dim = shape.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut surface_rows = Vec::with_capacity(spec.n_points);
    let mut noisy_rows = Vec::with_capacity(spec.n_points);
    let mut labels = Vec::with_capacity(spec.n_points);
    for _ in 0..spec.n_points {
        let r = rng.random::<f64>();
        let component = cum
            .iter()
            .position(|&c| r < c)
            .unwrap_or(weights.len() - 1);
        let s = shape.sample_surface(component, &mut rng);
        let noise = curves::ball_noise(&mut rng, dim, spec.noise);
        let noisy: Vec<f64> = s.iter().zip(&noise).map(|(a, b)| a + b).collect();
        surface_rows.push(s);
        noisy_rows.push(noisy);
        labels.push(component);
    }
    let surface = PointCloud::from_rows(&surface_rows).expect("surface samples are finite");
    let cloud = PointCloud::from_rows(&noisy_rows).expect("noisy samples are finite");

    let radius = spec
        .ambiguity_radius
        .unwrap_or_else(|| 2.0 * spec.noise + median_nn_spacing(&cloud));
    let ambiguous: Vec<bool> = (0..cloud.len())
        .map(|i| shape.intersection_distance(cloud.point(i)) <= radius)
        .collect();
    Ok(LabeledCloud {
        cloud,
        surface,
        true_labels: labels,
        ambiguous,
        ambiguity_radius: radius,
    })
}
