//! The built-in manifold arrangements.
//!
//! Every shape fixes its own geometry (sizes, angles, parameter ranges)
//! so that a dataset is fully determined by shape name, point count,
//! mixture weights, noise amplitude, and seed. Curved components are
//! sampled uniformly in arclength or surface area via rejection on the
//! parametrization speed.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use rand::RngCore;

use super::curves::{
    curve_distance, curve_intersections, interval_distance, sample_by_speed, segment_distance,
};
use super::ManifoldShape;

fn unit_gaussian(rng: &mut dyn RngCore, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim)
            .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Two interleaved Archimedean spiral arms relating by a half-turn
/// rotation. Radius grows linearly from about 0.14 to 1 over one and a
/// half turns; the arms never touch.
pub struct TwoSpirals {
    t0: f64,
    t1: f64,
}

impl TwoSpirals {
    pub fn new() -> Self {
        TwoSpirals {
            t0: FRAC_PI_2,
            t1: FRAC_PI_2 + 3.0 * PI,
        }
    }

    fn arm(&self, t: f64, flip: bool) -> [f64; 2] {
        let a = 1.0 / self.t1;
        let s = if flip { -1.0 } else { 1.0 };
        [s * a * t * t.cos(), s * a * t * t.sin()]
    }
}

impl ManifoldShape for TwoSpirals {
    fn name(&self) -> &'static str {
        "two_spirals"
    }
    fn describe(&self) -> &'static str {
        "two interleaved planar spiral arms, no intersection"
    }
    fn ambient_dim(&self) -> usize {
        2
    }
    fn n_components(&self) -> usize {
        2
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        let speed = |t: f64| (1.0 + t * t).sqrt();
        let t = sample_by_speed(rng, self.t0, self.t1, speed, speed(self.t1));
        self.arm(t, component == 1).to_vec()
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        let flip = component == 1;
        curve_distance([p[0], p[1]], |t| self.arm(t, flip), self.t0, self.t1, 4096)
    }
    fn intersection_distance(&self, _p: &[f64]) -> f64 {
        f64::INFINITY
    }
}

/// A four-petal rose crossed by a circle of radius 0.7, meeting it in
/// eight points (two per petal).
pub struct RoseAndCircle {
    crossings: Vec<[f64; 2]>,
}

pub const ROSE_CIRCLE_RADIUS: f64 = 0.7;

fn rose_point(t: f64) -> [f64; 2] {
    let r = (2.0 * t).cos();
    [r * t.cos(), r * t.sin()]
}

impl RoseAndCircle {
    pub fn new() -> Self {
        // The rose traced by r = cos(2t) covers, as a point set, every
        // direction phi at radius |cos(2 phi)|, so circle crossings sit
        // at the eight directions solving |cos(2 phi)| = 0.7.
        let alpha = ROSE_CIRCLE_RADIUS.acos();
        let mut crossings = Vec::with_capacity(8);
        for base in [
            alpha / 2.0,
            -alpha / 2.0,
            (PI - alpha) / 2.0,
            -(PI - alpha) / 2.0,
        ] {
            for phi in [base, base + PI] {
                crossings.push([
                    ROSE_CIRCLE_RADIUS * phi.cos(),
                    ROSE_CIRCLE_RADIUS * phi.sin(),
                ]);
            }
        }
        RoseAndCircle { crossings }
    }

    pub fn crossing_points(&self) -> &[[f64; 2]] {
        &self.crossings
    }
}

impl ManifoldShape for RoseAndCircle {
    fn name(&self) -> &'static str {
        "rose_and_circle"
    }
    fn describe(&self) -> &'static str {
        "four-petal rose crossed by a circle in eight points"
    }
    fn ambient_dim(&self) -> usize {
        2
    }
    fn n_components(&self) -> usize {
        2
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        if component == 0 {
            let speed = |t: f64| {
                let s2 = (2.0 * t).sin();
                let c2 = (2.0 * t).cos();
                (4.0 * s2 * s2 + c2 * c2).sqrt()
            };
            let t = sample_by_speed(rng, 0.0, TAU, speed, 2.0);
            rose_point(t).to_vec()
        } else {
            let phi = TAU * rng.random::<f64>();
            vec![
                ROSE_CIRCLE_RADIUS * phi.cos(),
                ROSE_CIRCLE_RADIUS * phi.sin(),
            ]
        }
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        if component == 0 {
            curve_distance([p[0], p[1]], rose_point, 0.0, TAU, 8192)
        } else {
            (p[0].hypot(p[1]) - ROSE_CIRCLE_RADIUS).abs()
        }
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        self.crossings
            .iter()
            .map(|c| (p[0] - c[0]).hypot(p[1] - c[1]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Two unit spheres with centers one apart, overlapping in a circle.
pub struct TwoSpheres;

const SPHERE_CENTERS: [[f64; 3]; 2] = [[-0.5, 0.0, 0.0], [0.5, 0.0, 0.0]];

impl ManifoldShape for TwoSpheres {
    fn name(&self) -> &'static str {
        "two_spheres"
    }
    fn describe(&self) -> &'static str {
        "two overlapping unit spheres, intersection circle in the mid plane"
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn n_components(&self) -> usize {
        2
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        let dir = unit_gaussian(rng, 3);
        let c = SPHERE_CENTERS[component];
        vec![c[0] + dir[0], c[1] + dir[1], c[2] + dir[2]]
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        let c = SPHERE_CENTERS[component];
        let d = ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)).sqrt();
        (d - 1.0).abs()
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        // The spheres meet in the circle x = 0, y^2 + z^2 = 3/4.
        let ring = 0.75f64.sqrt();
        (p[0].powi(2) + (p[1].hypot(p[2]) - ring).powi(2)).sqrt()
    }
}

/// Three unit-height rectangular strips sharing the vertical segment
/// x = y = 0, z in [0, 1], at sixty degrees to one another.
pub struct ThreePlanes;

const PLANE_ANGLES: [f64; 3] = [0.0, PI / 3.0, 2.0 * PI / 3.0];

impl ManifoldShape for ThreePlanes {
    fn name(&self) -> &'static str {
        "three_planes"
    }
    fn describe(&self) -> &'static str {
        "three rectangular strips crossing along a shared vertical segment"
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn n_components(&self) -> usize {
        3
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        let a = PLANE_ANGLES[component];
        let u = rng.random::<f64>() - 0.5;
        let v = rng.random::<f64>();
        vec![u * a.cos(), u * a.sin(), v]
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        let a = PLANE_ANGLES[component];
        let u = p[0] * a.cos() + p[1] * a.sin();
        let w = -p[0] * a.sin() + p[1] * a.cos();
        (w * w
            + interval_distance(u, -0.5, 0.5).powi(2)
            + interval_distance(p[2], 0.0, 1.0).powi(2))
        .sqrt()
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        (p[0] * p[0] + p[1] * p[1] + interval_distance(p[2], 0.0, 1.0).powi(2)).sqrt()
    }
}

/// Five unit-length segments through the origin at thirty-six degree
/// increments.
pub struct FiveSegments;

const SEGMENT_COUNT: usize = 5;

fn segment_dir(k: usize) -> [f64; 2] {
    let a = PI * k as f64 / SEGMENT_COUNT as f64;
    [a.cos(), a.sin()]
}

impl ManifoldShape for FiveSegments {
    fn name(&self) -> &'static str {
        "five_segments"
    }
    fn describe(&self) -> &'static str {
        "five unit segments through a common point, evenly rotated"
    }
    fn ambient_dim(&self) -> usize {
        2
    }
    fn n_components(&self) -> usize {
        SEGMENT_COUNT
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        let d = segment_dir(component);
        let u = rng.random::<f64>() - 0.5;
        vec![u * d[0], u * d[1]]
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        let d = segment_dir(component);
        segment_distance(p, &[-0.5 * d[0], -0.5 * d[1]], &[0.5 * d[0], 0.5 * d[1]])
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        p[0].hypot(p[1])
    }
}

/// A unit cone (apex down at the origin, slope one) pierced by a
/// horizontal square at sixty percent of its height.
pub struct ConeAndPlane;

const CONE_PLANE_HEIGHT: f64 = 0.6;
const CONE_PLANE_HALF: f64 = 1.0;

impl ManifoldShape for ConeAndPlane {
    fn name(&self) -> &'static str {
        "cone_and_plane"
    }
    fn describe(&self) -> &'static str {
        "upright cone pierced by a horizontal square, circular crossing"
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn n_components(&self) -> usize {
        2
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        if component == 0 {
            // Area density on the cone grows linearly with height.
            let v = rng.random::<f64>().sqrt();
            let phi = TAU * rng.random::<f64>();
            vec![v * phi.cos(), v * phi.sin(), v]
        } else {
            let x = CONE_PLANE_HALF * (2.0 * rng.random::<f64>() - 1.0);
            let y = CONE_PLANE_HALF * (2.0 * rng.random::<f64>() - 1.0);
            vec![x, y, CONE_PLANE_HEIGHT]
        }
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        if component == 0 {
            // Rotational symmetry reduces the cone to the profile
            // segment from (0,0) to (1,1) in (radius, height).
            let rho = p[0].hypot(p[1]);
            segment_distance(&[rho, p[2]], &[0.0, 0.0], &[1.0, 1.0])
        } else {
            ((p[2] - CONE_PLANE_HEIGHT).powi(2)
                + interval_distance(p[0], -CONE_PLANE_HALF, CONE_PLANE_HALF).powi(2)
                + interval_distance(p[1], -CONE_PLANE_HALF, CONE_PLANE_HALF).powi(2))
            .sqrt()
        }
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        let rho = p[0].hypot(p[1]);
        ((rho - CONE_PLANE_HEIGHT).powi(2) + (p[2] - CONE_PLANE_HEIGHT).powi(2)).sqrt()
    }
}

const ROLL_T0: f64 = 1.5 * PI;
const ROLL_T1: f64 = 4.5 * PI;

fn roll_profile(t: f64) -> [f64; 2] {
    [
        t * t.cos() / ROLL_T1,
        t * t.sin() / ROLL_T1,
    ]
}

fn sample_roll(rng: &mut dyn RngCore) -> Vec<f64> {
    let speed = |t: f64| (1.0 + t * t).sqrt();
    let t = sample_by_speed(rng, ROLL_T0, ROLL_T1, speed, speed(ROLL_T1));
    let y = rng.random::<f64>();
    let p = roll_profile(t);
    vec![p[0], y, p[1]]
}

fn roll_distance(p: &[f64]) -> f64 {
    let d2 = curve_distance([p[0], p[2]], roll_profile, ROLL_T0, ROLL_T1, 8192);
    (d2 * d2 + interval_distance(p[1], 0.0, 1.0).powi(2)).sqrt()
}

fn plane_distance(p: &[f64]) -> f64 {
    (p[2] * p[2]
        + interval_distance(p[0], -1.0, 1.0).powi(2)
        + interval_distance(p[1], 0.0, 1.0).powi(2))
    .sqrt()
}

fn sample_plane(rng: &mut dyn RngCore) -> Vec<f64> {
    vec![
        2.0 * rng.random::<f64>() - 1.0,
        rng.random::<f64>(),
        0.0,
    ]
}

/// Intersections of the rolled sheet with the plane z = 0: the roll
/// profile crosses the x axis where sin t = 0.
fn roll_plane_cross_xs() -> [f64; 3] {
    [
        2.0 * PI * (2.0 * PI).cos() / ROLL_T1,
        3.0 * PI * (3.0 * PI).cos() / ROLL_T1,
        4.0 * PI * (4.0 * PI).cos() / ROLL_T1,
    ]
}

/// A rolled-up sheet (spiral cross-section extruded along y) sliced by a
/// flat vertical sheet, crossing along three parallel segments.
pub struct RollAndPlane {
    cross_xs: [f64; 3],
}

impl RollAndPlane {
    pub fn new() -> Self {
        RollAndPlane {
            cross_xs: roll_plane_cross_xs(),
        }
    }
}

impl ManifoldShape for RollAndPlane {
    fn name(&self) -> &'static str {
        "roll_and_plane"
    }
    fn describe(&self) -> &'static str {
        "rolled sheet sliced by a flat sheet along three segments"
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn n_components(&self) -> usize {
        2
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        if component == 0 {
            sample_roll(rng)
        } else {
            sample_plane(rng)
        }
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        if component == 0 {
            roll_distance(p)
        } else {
            plane_distance(p)
        }
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        self.cross_xs
            .iter()
            .map(|&xk| {
                ((p[0] - xk).powi(2)
                    + p[2] * p[2]
                    + interval_distance(p[1], 0.0, 1.0).powi(2))
                .sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

const DOLLAR_T: f64 = 1.5 * PI;
const DOLLAR_BAR_HALF: f64 = 1.1;
const DOLLAR_Y: f64 = 0.5;

/// S-stroke profile in the (x, z) plane: two half-turn arcs joined
/// smoothly at the origin, spanning x in [-0.5, 0.5] and z in [-1, 1].
fn dollar_s_profile(t: f64) -> [f64; 2] {
    let sign = if t >= 0.0 { 1.0 } else { -1.0 };
    [0.5 * t.sin(), 0.5 * sign * (t.cos() - 1.0)]
}

/// An S-stroke with a vertical bar (a dollar glyph) living in the plane
/// y = 1/2, a flat sheet at z = 0, and the rolled sheet. All three
/// pairwise crossings are present: glyph with sheet at one point, sheet
/// with roll along three segments, glyph with roll in isolated points.
pub struct DollarPlaneRoll {
    s_fraction: f64,
    cross_points: Vec<[f64; 3]>,
    cross_xs: [f64; 3],
}

impl DollarPlaneRoll {
    pub fn new() -> Self {
        // Both S arcs have constant speed 1/2, so the stroke length is
        // half the parameter span.
        let s_len = 0.5 * 2.0 * DOLLAR_T;
        let bar_len = 2.0 * DOLLAR_BAR_HALF;
        let mut cross_points = vec![[0.0, DOLLAR_Y, 0.0]];
        // Bar and roll: the profile crosses x = 0 where cos t = 0.
        for (mult, sign) in [(1.5, -1.0), (2.5, 1.0), (3.5, -1.0), (4.5, 1.0)] {
            let z = mult * PI * sign / ROLL_T1;
            if z.abs() <= DOLLAR_BAR_HALF {
                cross_points.push([0.0, DOLLAR_Y, z]);
            }
        }
        for p in curve_intersections(
            dollar_s_profile,
            (-DOLLAR_T, DOLLAR_T),
            roll_profile,
            (ROLL_T0, ROLL_T1),
            4096,
        ) {
            cross_points.push([p[0], DOLLAR_Y, p[1]]);
        }
        DollarPlaneRoll {
            s_fraction: s_len / (s_len + bar_len),
            cross_points,
            cross_xs: roll_plane_cross_xs(),
        }
    }

    pub fn crossing_points(&self) -> &[[f64; 3]] {
        &self.cross_points
    }
}

impl ManifoldShape for DollarPlaneRoll {
    fn name(&self) -> &'static str {
        "dollar_plane_roll"
    }
    fn describe(&self) -> &'static str {
        "dollar glyph, flat sheet, and rolled sheet, all pairwise crossing"
    }
    fn ambient_dim(&self) -> usize {
        3
    }
    fn n_components(&self) -> usize {
        3
    }
    fn sample_surface(&self, component: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        match component {
            0 => {
                if rng.random::<f64>() < self.s_fraction {
                    let t = -DOLLAR_T + 2.0 * DOLLAR_T * rng.random::<f64>();
                    let p = dollar_s_profile(t);
                    vec![p[0], DOLLAR_Y, p[1]]
                } else {
                    let z = DOLLAR_BAR_HALF * (2.0 * rng.random::<f64>() - 1.0);
                    vec![0.0, DOLLAR_Y, z]
                }
            }
            1 => sample_plane(rng),
            _ => sample_roll(rng),
        }
    }
    fn surface_distance(&self, component: usize, p: &[f64]) -> f64 {
        match component {
            0 => {
                let d_s = curve_distance(
                    [p[0], p[2]],
                    dollar_s_profile,
                    -DOLLAR_T,
                    DOLLAR_T,
                    8192,
                );
                let stroke = (d_s * d_s + (p[1] - DOLLAR_Y).powi(2)).sqrt();
                let bar = segment_distance(
                    p,
                    &[0.0, DOLLAR_Y, -DOLLAR_BAR_HALF],
                    &[0.0, DOLLAR_Y, DOLLAR_BAR_HALF],
                );
                stroke.min(bar)
            }
            1 => plane_distance(p),
            _ => roll_distance(p),
        }
    }
    fn intersection_distance(&self, p: &[f64]) -> f64 {
        let seg = self
            .cross_xs
            .iter()
            .map(|&xk| {
                ((p[0] - xk).powi(2)
                    + p[2] * p[2]
                    + interval_distance(p[1], 0.0, 1.0).powi(2))
                .sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        let pts = self
            .cross_points
            .iter()
            .map(|c| {
                ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)).sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        seg.min(pts)
    }
}
