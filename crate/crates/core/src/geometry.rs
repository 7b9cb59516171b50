//! Triplet geometry: turn angles, circumradius, and discrete curvature.
//!
//! All quantities are defined on an ordered triplet of points (x, y, z)
//! read as "travel from x through y to z". The turn angle at y is the angle
//! between the displacement y - x and the displacement z - y, so going
//! straight is a turn of 0 and doubling back is a turn of pi.
//!
//! The radius convention used throughout equals the chord length |xz|
//! divided by the sine of the turn angle, which is twice the classical
//! circumradius of the three points. Curvature is the reciprocal of that
//! radius, so a unit circle sampled finely has curvature 1/2 under this
//! convention, and every bound in this crate is read against it.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero-length segment at the {0} leg of the triplet")]
    ZeroLengthSegment(&'static str),
    #[error("{0}")]
    Domain(String),
}

/// Relative slack applied when a constraint is compared against its bound,
/// so that values sitting exactly on the bound do not flip with platform
/// rounding differences.
pub const CONSTRAINT_SLACK: f64 = 1e-12;

#[inline]
fn sub_norm_dot(x: &[f64], y: &[f64], z: &[f64]) -> (f64, f64, f64) {
    // Returns (|y-x|, |z-y|, <y-x, z-y>) in one pass.
    let mut nu = 0.0;
    let mut nv = 0.0;
    let mut d = 0.0;
    for i in 0..x.len() {
        let u = y[i] - x[i];
        let v = z[i] - y[i];
        nu += u * u;
        nv += v * v;
        d += u * v;
    }
    (nu.sqrt(), nv.sqrt(), d)
}

fn check_dims(x: &[f64], y: &[f64], z: &[f64]) -> Result<(), GeometryError> {
    if x.len() != y.len() {
        return Err(GeometryError::DimensionMismatch(x.len(), y.len()));
    }
    if y.len() != z.len() {
        return Err(GeometryError::DimensionMismatch(y.len(), z.len()));
    }
    Ok(())
}

/// Turn angle at y for the ordered triplet (x, y, z), in [0, pi].
///
/// Errors if either leg has zero length; the angle is undefined there.
pub fn turn_angle(x: &[f64], y: &[f64], z: &[f64]) -> Result<f64, GeometryError> {
    check_dims(x, y, z)?;
    let (nu, nv, d) = sub_norm_dot(x, y, z);
    if nu == 0.0 {
        return Err(GeometryError::ZeroLengthSegment("incoming"));
    }
    if nv == 0.0 {
        return Err(GeometryError::ZeroLengthSegment("outgoing"));
    }
    let c = (d / (nu * nv)).clamp(-1.0, 1.0);
    Ok(c.acos())
}

/// Radius of the circle through x, y, z in the chord-over-sine convention
/// (twice the classical circumradius). Aligned triplets, where the turn
/// angle is exactly 0 or pi, yield +infinity.
pub fn circumradius(x: &[f64], y: &[f64], z: &[f64]) -> Result<f64, GeometryError> {
    check_dims(x, y, z)?;
    let (a, b, d) = sub_norm_dot(x, y, z);
    if a == 0.0 {
        return Err(GeometryError::ZeroLengthSegment("incoming"));
    }
    if b == 0.0 {
        return Err(GeometryError::ZeroLengthSegment("outgoing"));
    }
    let cos_phi = (d / (a * b)).clamp(-1.0, 1.0);
    let sin_phi = (1.0 - cos_phi * cos_phi).sqrt();
    if sin_phi == 0.0 {
        return Ok(f64::INFINITY);
    }
    // a^2 + b^2 + 2ab cos(phi) is |xz|^2 by the law of cosines, because the
    // interior angle of the triangle at y is pi minus the turn angle.
    Ok((a * a + b * b + 2.0 * a * b * cos_phi).sqrt() / sin_phi)
}

/// Discrete curvature of the ordered triplet (x, y, z): the reciprocal of
/// [`circumradius`] when the turn angle is below pi/2, and +infinity at or
/// above pi/2. Collinear forward motion has curvature 0.
pub fn curvature(x: &[f64], y: &[f64], z: &[f64]) -> Result<f64, GeometryError> {
    let phi = turn_angle(x, y, z)?;
    if phi >= std::f64::consts::FRAC_PI_2 {
        return Ok(f64::INFINITY);
    }
    let r = circumradius(x, y, z)?;
    Ok(1.0 / r)
}

/// Curvature bound equivalent to a turn-angle bound `theta` on graphs whose
/// edge lengths all lie in [epsilon/2, epsilon]: any triplet with both legs
/// in that range and turn angle at most theta has curvature at most this
/// value. Requires theta in (0, pi/2) and epsilon > 0.
pub fn angle_to_curvature(theta: f64, epsilon: f64) -> Result<f64, GeometryError> {
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(GeometryError::Domain(format!(
            "theta must lie in (0, pi/2), got {theta}"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(GeometryError::Domain(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(2.0 * theta.sin() / (epsilon * epsilon / 2.0 * (1.0 + theta.cos())).sqrt())
}
