//! Triangle meshes, connectivity derivation, and per-edge geometric frames.
//!
//! A [`TriangleMesh`] is immutable after construction and validated up front:
//! every triangle references three distinct in-range vertices, every triangle
//! has area above a floor, and the mesh is an orientable 2-manifold with
//! boundary (one or two triangles per edge, opposite traversal directions on
//! interior edges). All downstream geometry can therefore assume a sane mesh.
//!
//! For each interior edge the mesh exposes an [`EdgeFrame`]: the edge length,
//! the two adjacent unit face normals, and the two co-normals (in-plane,
//! edge-perpendicular, outward-pointing unit vectors). The side labelled `+`
//! is always the incident triangle with the smaller index, which makes frame
//! orientation deterministic and independent of file ordering quirks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Default triangle-area floor (squared model units) below which a triangle
/// counts as degenerate.
pub const DEFAULT_AREA_FLOOR: f64 = 1e-12;

/// Connectivity record for an edge shared by exactly two triangles.
///
/// `vertices` is the canonical (sorted) vertex pair; `face_plus` is the
/// incident triangle with the smaller index and `face_minus` the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InteriorEdge {
    pub vertices: [usize; 2],
    pub face_plus: usize,
    pub face_minus: usize,
}

/// Per-edge geometric quantities used by the energy and the solver.
#[derive(Clone, Copy, Debug)]
pub struct EdgeFrame {
    /// Canonical (sorted) vertex pair of the edge.
    pub edge: [usize; 2],
    /// Incident triangle with the smaller index (the `+` side).
    pub face_plus: usize,
    /// Incident triangle with the larger index (the `-` side).
    pub face_minus: usize,
    /// Euclidean edge length, strictly positive.
    pub length: f64,
    /// Unit normal of `face_plus`.
    pub n_plus: Vec3,
    /// Unit normal of `face_minus`.
    pub n_minus: Vec3,
    /// Unit co-normal of `face_plus`: in its plane, perpendicular to the
    /// edge, pointing away from the triangle interior.
    pub mu_plus: Vec3,
    /// Unit co-normal of `face_minus`.
    pub mu_minus: Vec3,
}

/// An immutable triangulated surface in R³.
#[derive(Clone, Debug)]
pub struct TriangleMesh {
    vertices: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
    interior_edges: Vec<InteriorEdge>,
    boundary_edges: Vec<[usize; 2]>,
}

impl TriangleMesh {
    /// Builds and validates a mesh with the default area floor.
    pub fn new(vertices: Vec<Vec3>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        Self::with_area_floor(vertices, triangles, DEFAULT_AREA_FLOOR)
    }

    /// Builds and validates a mesh, treating any triangle with area at or
    /// below `area_floor` as degenerate.
    // `!(area > floor)` rather than `area <= floor`: NaN areas must fail.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn with_area_floor(
        vertices: Vec<Vec3>,
        triangles: Vec<[usize; 3]>,
        area_floor: f64,
    ) -> Result<Self> {
        if vertices.len() < 3 || triangles.is_empty() {
            return Err(Error::EmptyMesh);
        }
        for (v, p) in vertices.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFiniteCoordinate { vertex: v });
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            for &i in tri {
                if i >= vertices.len() {
                    return Err(Error::VertexIndexOutOfRange { triangle: t, index: i });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::RepeatedVertex { triangle: t });
            }
            let area = triangle_area(&vertices, *tri);
            if !(area > area_floor) {
                return Err(Error::DegenerateTriangle { triangle: t, area });
            }
        }
        let (interior_edges, boundary_edges) = derive_edges(&triangles)?;
        Ok(TriangleMesh { vertices, triangles, interior_edges, boundary_edges })
    }

    /// Returns a mesh with the same connectivity and new vertex positions.
    ///
    /// Connectivity-derived data is reused; only the geometric invariants
    /// (finite coordinates, areas above `area_floor`) are re-checked.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn with_positions(&self, positions: Vec<Vec3>, area_floor: f64) -> Result<Self> {
        if positions.len() != self.vertices.len() {
            return Err(Error::VertexCountMismatch {
                expected: self.vertices.len(),
                got: positions.len(),
            });
        }
        for (v, p) in positions.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFiniteCoordinate { vertex: v });
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            let area = triangle_area(&positions, *tri);
            if !(area > area_floor) {
                return Err(Error::DegenerateTriangle { triangle: t, area });
            }
        }
        Ok(TriangleMesh {
            vertices: positions,
            triangles: self.triangles.clone(),
            interior_edges: self.interior_edges.clone(),
            boundary_edges: self.boundary_edges.clone(),
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Interior edges in canonical (sorted vertex pair) order.
    pub fn interior_edges(&self) -> &[InteriorEdge] {
        &self.interior_edges
    }

    /// Boundary edges (exactly one incident triangle), canonical order.
    pub fn boundary_edges(&self) -> &[[usize; 2]] {
        &self.boundary_edges
    }

    /// Total number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.interior_edges.len() + self.boundary_edges.len()
    }

    /// Unit normal of triangle `t` (CCW orientation, outward for closed
    /// meshes modelled with outward-facing triangles).
    pub fn face_normal(&self, t: usize) -> Vec3 {
        self.face_normal_unnormalized(t).normalized()
    }

    /// Cross product of the triangle's edge vectors; its norm is twice the
    /// triangle area.
    pub fn face_normal_unnormalized(&self, t: usize) -> Vec3 {
        let [a, b, c] = self.triangles[t];
        (self.vertices[b] - self.vertices[a]).cross(self.vertices[c] - self.vertices[a])
    }

    pub fn face_area(&self, t: usize) -> f64 {
        0.5 * self.face_normal_unnormalized(t).norm()
    }

    pub fn min_face_area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| self.face_area(t))
            .fold(f64::INFINITY, f64::min)
    }

    /// Arithmetic mean of the lengths of all edges, boundary and interior.
    pub fn mean_edge_length(&self) -> f64 {
        let mut total = 0.0;
        let mut count = 0usize;
        for e in &self.interior_edges {
            total += self.edge_length(e.vertices);
            count += 1;
        }
        for &e in &self.boundary_edges {
            total += self.edge_length(e);
            count += 1;
        }
        total / count as f64
    }

    fn edge_length(&self, edge: [usize; 2]) -> f64 {
        self.vertices[edge[0]].distance(self.vertices[edge[1]])
    }

    /// Builds the geometric frame of every interior edge.
    ///
    /// Boundary edges carry only one normal and are excluded; they never
    /// contribute to the total variation of the normal.
    pub fn edge_frames(&self) -> Vec<EdgeFrame> {
        self.interior_edges.iter().map(|e| self.edge_frame(e)).collect()
    }

    fn edge_frame(&self, e: &InteriorEdge) -> EdgeFrame {
        let [a, b] = e.vertices;
        let length = self.edge_length(e.vertices);
        let n_plus = self.face_normal(e.face_plus);
        let n_minus = self.face_normal(e.face_minus);
        let mu_plus = self.co_normal(e.face_plus, a, b, n_plus);
        let mu_minus = self.co_normal(e.face_minus, a, b, n_minus);
        EdgeFrame {
            edge: e.vertices,
            face_plus: e.face_plus,
            face_minus: e.face_minus,
            length,
            n_plus,
            n_minus,
            mu_plus,
            mu_minus,
        }
    }

    /// Outward co-normal of face `t` along edge `{a, b}`.
    ///
    /// With counter-clockwise triangles, `direction × normal` points out of
    /// the triangle when `direction` follows the face's own traversal of the
    /// edge.
    fn co_normal(&self, t: usize, a: usize, b: usize, normal: Vec3) -> Vec3 {
        let (from, to) = match directed_occurrence(self.triangles[t], a, b) {
            Some(pair) => pair,
            // Unreachable on a validated mesh; orient along (a, b) to stay total.
            None => (a, b),
        };
        let dir = (self.vertices[to] - self.vertices[from]).normalized();
        dir.cross(normal).normalized()
    }
}

fn triangle_area(vertices: &[Vec3], tri: [usize; 3]) -> f64 {
    let [a, b, c] = tri;
    0.5 * (vertices[b] - vertices[a]).cross(vertices[c] - vertices[a]).norm()
}

/// Returns the edge endpoints in the order triangle `tri` traverses them,
/// or `None` if the triangle does not contain edge `{a, b}`.
fn directed_occurrence(tri: [usize; 3], a: usize, b: usize) -> Option<(usize, usize)> {
    for i in 0..3 {
        let (u, v) = (tri[i], tri[(i + 1) % 3]);
        if (u == a && v == b) || (u == b && v == a) {
            return Some((u, v));
        }
    }
    None
}

/// Splits the undirected edge set into interior and boundary edges, checking
/// manifoldness and orientation consistency along the way.
fn derive_edges(triangles: &[[usize; 3]]) -> Result<(Vec<InteriorEdge>, Vec<[usize; 2]>)> {
    // For every undirected edge: incident faces and whether each face
    // traverses the edge from the smaller to the larger vertex index.
    let mut edges: BTreeMap<[usize; 2], Vec<(usize, bool)>> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for i in 0..3 {
            let (u, v) = (tri[i], tri[(i + 1) % 3]);
            let key = if u < v { [u, v] } else { [v, u] };
            edges.entry(key).or_default().push((t, u < v));
        }
    }
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    for (key, incident) in edges {
        match incident.as_slice() {
            [_] => boundary.push(key),
            [(t0, d0), (t1, d1)] => {
                if d0 == d1 {
                    return Err(Error::InconsistentOrientation { edge: key });
                }
                let (face_plus, face_minus) = if t0 < t1 { (*t0, *t1) } else { (*t1, *t0) };
                interior.push(InteriorEdge { vertices: key, face_plus, face_minus });
            }
            _ => return Err(Error::NonManifoldEdge { edge: key }),
        }
    }
    Ok((interior, boundary))
}
