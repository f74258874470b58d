//! Reconstruction quality measures against a ground-truth mesh.

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::sphere::geodesic_distance;

/// Mean over triangles of the angle between corresponding face normals,
/// in radians. Requires identical connectivity.
pub fn mean_angular_error(mesh: &TriangleMesh, reference: &TriangleMesh) -> Result<f64> {
    if mesh.triangles() != reference.triangles() {
        return Err(Error::ConnectivityMismatch);
    }
    let total: f64 = (0..mesh.triangle_count())
        .map(|t| geodesic_distance(mesh.face_normal(t), reference.face_normal(t)))
        .sum();
    Ok(total / mesh.triangle_count() as f64)
}

/// Root-mean-square vertex position error:
/// `sqrt(Σ_V |x_V - x_V^ref|² / V)`. Requires equal vertex counts.
pub fn vertex_l2_error(mesh: &TriangleMesh, reference: &TriangleMesh) -> Result<f64> {
    if mesh.vertex_count() != reference.vertex_count() {
        return Err(Error::DataLengthMismatch {
            expected: reference.vertex_count(),
            got: mesh.vertex_count(),
        });
    }
    let total: f64 = mesh
        .vertices()
        .iter()
        .zip(reference.vertices())
        .map(|(&p, &q)| (p - q).norm_squared())
        .sum();
    Ok(libm::sqrt(total / mesh.vertex_count() as f64))
}
