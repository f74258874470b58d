//! Geometry of the unit sphere S²: logarithmic map, geodesic distance, the
//! signed distance between neighboring face normals, and its derivatives.
//!
//! The signed normal distance across an interior edge,
//!
//! ```text
//! s = sign(μ⁺ · n⁻) · arccos(n⁺ · n⁻),
//! ```
//!
//! measures the dihedral opening between the two adjacent triangles: positive
//! at convex creases, negative at concave ones, zero when they are coplanar.
//! Its derivative with respect to the normals has the remarkably simple
//! closed form `∂s/∂n⁺ = -μ⁺`, `∂s/∂n⁻ = -μ⁻`, which stays continuous even
//! across `n⁺ = n⁻` where the arccos itself is not differentiable. The
//! gradient assembly in [`crate::energy`] builds exclusively on that form.
//!
//! Angles between unit vectors are evaluated as `atan2(|a × b|, a · b)`
//! rather than `acos(a · b)`: the two agree on unit inputs, but the atan2
//! form returns exactly 0 for bitwise-equal inputs and keeps full precision
//! for nearly parallel normals, where acos loses half its digits.

use crate::error::{Error, Result};
use crate::mesh::EdgeFrame;
use crate::vec3::Vec3;

/// How close `a · b` may come to -1 before two unit vectors count as
/// antipodal (or two face normals as folded).
const ANTIPODAL_TOL: f64 = 1e-12;

/// A tangent vector of S²: a foot point on the sphere and a direction in its
/// tangent plane (`base · dir = 0`).
#[derive(Clone, Copy, Debug)]
pub struct TangentVector {
    pub base: Vec3,
    pub dir: Vec3,
}

/// Geodesic distance (angle) between two unit vectors, in `[0, π]`.
///
/// Equals `arccos(a · b)` on unit inputs; total — antipodal inputs yield π.
pub fn geodesic_distance(a: Vec3, b: Vec3) -> f64 {
    libm::atan2(a.cross(b).norm(), a.dot(b))
}

/// Logarithmic map of S²: the tangent vector at `base` pointing toward
/// `target` whose length is the geodesic distance.
///
/// Errors with [`Error::AntipodalPoints`] when `base ≈ -target`, where the
/// direction is not unique.
pub fn sphere_log(base: Vec3, target: Vec3) -> Result<TangentVector> {
    if base == target {
        return Ok(TangentVector { base, dir: Vec3::ZERO });
    }
    let dot = base.dot(target).clamp(-1.0, 1.0);
    if 1.0 + dot <= ANTIPODAL_TOL {
        return Err(Error::AntipodalPoints);
    }
    // target - (base·target) base = sin(θ) · (unit direction toward target).
    let perp = target - dot * base;
    let sin_theta = perp.norm();
    if sin_theta == 0.0 {
        return Ok(TangentVector { base, dir: Vec3::ZERO });
    }
    let theta = libm::atan2(sin_theta, dot);
    Ok(TangentVector { base, dir: perp * (theta / sin_theta) })
}

/// Signed geodesic distance between the two face normals of an interior
/// edge: `sign(μ⁺ · n⁻) · arccos(n⁺ · n⁻)`, with `sign(0) := 0`.
///
/// Errors with [`Error::FoldedEdge`] when the normals are (numerically)
/// opposite; an angle of π means the surface folds back onto itself, which
/// this model treats as invalid geometry.
pub fn signed_normal_distance(frame: &EdgeFrame) -> Result<f64> {
    if 1.0 + frame.n_plus.dot(frame.n_minus) <= ANTIPODAL_TOL {
        return Err(Error::FoldedEdge { edge: frame.edge });
    }
    let theta = geodesic_distance(frame.n_plus, frame.n_minus);
    Ok(sign0(frame.mu_plus.dot(frame.n_minus)) * theta)
}

fn sign0(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Derivative of `arccos(base · other)` with respect to `base`, restricted
/// to the sphere:
///
/// ```text
/// -(other - (base·other) base) / sqrt(1 - (base·other)²)
/// ```
///
/// The result is a unit vector tangent to S² at `base`. Undefined for
/// parallel or antiparallel inputs; callers that need continuity across
/// `base = other` use [`d_signed_distance`] instead, which never forms this
/// singular quotient.
pub fn d_arccos_dn(base: Vec3, other: Vec3) -> Result<Vec3> {
    let dot = base.dot(other).clamp(-1.0, 1.0);
    let denom_sq = 1.0 - dot * dot;
    if denom_sq <= ANTIPODAL_TOL * ANTIPODAL_TOL {
        return Err(Error::ParallelVectors);
    }
    Ok(-(other - dot * base) / libm::sqrt(denom_sq))
}

/// Derivative of the signed normal distance with respect to the two face
/// normals: `(∂s/∂n⁺, ∂s/∂n⁻) = (-μ⁺, -μ⁻)`.
///
/// Unlike [`d_arccos_dn`] this is defined and continuous even when the
/// normals coincide, so near-coplanar edges need no special casing.
pub fn d_signed_distance(frame: &EdgeFrame) -> (Vec3, Vec3) {
    (-frame.mu_plus, -frame.mu_minus)
}
