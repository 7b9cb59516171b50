//! Numeric helpers for parametric curves: arclength-uniform sampling,
//! point-to-curve distance, and curve-curve intersection points.

use rand::Rng;
use rand::RngCore;

/// Draws a parameter in [t0, t1] with density proportional to `speed`,
/// by rejection against the supplied upper bound. Sampling the parameter
/// this way makes the resulting curve points uniform in arclength.
pub fn sample_by_speed(
    rng: &mut dyn RngCore,
    t0: f64,
    t1: f64,
    speed: impl Fn(f64) -> f64,
    speed_max: f64,
) -> f64 {
    loop {
        let t = t0 + (t1 - t0) * rng.random::<f64>();
        if rng.random::<f64>() * speed_max <= speed(t) {
            return t;
        }
    }
}

/// Distance from `p` to the curve `gamma` over [t0, t1]: dense scan
/// followed by golden-section refinement around the best grid cell. The
/// grid must be fine enough to land in the basin of the true minimum.
pub fn curve_distance(
    p: [f64; 2],
    gamma: impl Fn(f64) -> [f64; 2],
    t0: f64,
    t1: f64,
    grid: usize,
) -> f64 {
    let d2 = |t: f64| {
        let g = gamma(t);
        (g[0] - p[0]).powi(2) + (g[1] - p[1]).powi(2)
    };
    let step = (t1 - t0) / grid as f64;
    let mut best_i = 0usize;
    let mut best = f64::INFINITY;
    for i in 0..=grid {
        let v = d2(t0 + step * i as f64);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = t0 + step * best_i.saturating_sub(1) as f64;
    let hi = (t0 + step * (best_i + 1) as f64).min(t1);
    golden_min(d2, lo, hi).sqrt()
}

/// Golden-section minimization of a unimodal function on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..90 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    fc.min(fd)
}

/// Distance from `p` to the segment [a, b] in any dimension.
pub fn segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut ab2 = 0.0;
    let mut ap_ab = 0.0;
    for i in 0..p.len() {
        let d = b[i] - a[i];
        ab2 += d * d;
        ap_ab += (p[i] - a[i]) * d;
    }
    let t = if ab2 > 0.0 {
        (ap_ab / ab2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut out = 0.0;
    for i in 0..p.len() {
        let d = p[i] - (a[i] + t * (b[i] - a[i]));
        out += d * d;
    }
    out.sqrt()
}

/// Distance from `x` to the interval [lo, hi].
pub fn interval_distance(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        0.0
    }
}

/// Intersection points of two planar parametric curves. Both are scanned
/// as dense polylines; each crossing segment pair is refined by Newton
/// iteration on (s, u). Tangential near-misses below polyline resolution
/// are not detected.
pub fn curve_intersections(
    f: impl Fn(f64) -> [f64; 2] + Copy,
    fr: (f64, f64),
    g: impl Fn(f64) -> [f64; 2] + Copy,
    gr: (f64, f64),
    grid: usize,
) -> Vec<[f64; 2]> {
    let fs: Vec<[f64; 2]> = (0..=grid)
        .map(|i| f(fr.0 + (fr.1 - fr.0) * i as f64 / grid as f64))
        .collect();
    let gs: Vec<[f64; 2]> = (0..=grid)
        .map(|i| g(gr.0 + (gr.1 - gr.0) * i as f64 / grid as f64))
        .collect();
    let mut out: Vec<[f64; 2]> = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            if !segments_cross(fs[i], fs[i + 1], gs[j], gs[j + 1]) {
                continue;
            }
            let s0 = fr.0 + (fr.1 - fr.0) * (i as f64 + 0.5) / grid as f64;
            let u0 = gr.0 + (gr.1 - gr.0) * (j as f64 + 0.5) / grid as f64;
            if let Some(p) = newton_refine(f, g, s0, u0) {
                // Crossings found from adjacent cells collapse to one point.
                if out.iter().all(|q| {
                    (q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2) > 1e-16
                }) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    out
}

fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| {
        (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    };
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 * o2 <= 0.0 && o3 * o4 <= 0.0
}

/// Solves f(s) = g(u) by damped Newton with a finite-difference Jacobian.
fn newton_refine(
    f: impl Fn(f64) -> [f64; 2],
    g: impl Fn(f64) -> [f64; 2],
    mut s: f64,
    mut u: f64,
) -> Option<[f64; 2]> {
    const H: f64 = 1e-7;
    for _ in 0..60 {
        let pf = f(s);
        let pg = g(u);
        let rx = pf[0] - pg[0];
        let ry = pf[1] - pg[1];
        if rx * rx + ry * ry < 1e-26 {
            return Some([(pf[0] + pg[0]) * 0.5, (pf[1] + pg[1]) * 0.5]);
        }
        let fs = f(s + H);
        let gu = g(u + H);
        // Jacobian columns: d residual / ds and -d g / du.
        let j00 = (fs[0] - pf[0]) / H;
        let j10 = (fs[1] - pf[1]) / H;
        let j01 = -(gu[0] - pg[0]) / H;
        let j11 = -(gu[1] - pg[1]) / H;
        let det = j00 * j11 - j01 * j10;
        if det.abs() < 1e-18 {
            return None;
        }
        let ds = (rx * j11 - ry * j01) / det;
        let du = (j00 * ry - j10 * rx) / det;
        s -= ds;
        u -= du;
    }
    None
}

/// Uniform draw from the closed ball of radius `tau`: an isotropic
/// direction scaled by U^(1/dim).
pub fn ball_noise(rng: &mut dyn RngCore, dim: usize, tau: f64) -> Vec<f64> {
    if tau == 0.0 {
        return vec![0.0; dim];
    }
    loop {
        let v: Vec<f64> = (0..dim)
            .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            let r = tau * rng.random::<f64>().powf(1.0 / dim as f64);
            return v.into_iter().map(|x| x * r / norm).collect();
        }
    }
}
