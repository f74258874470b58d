//! Procedural reference shapes for tests, benchmarks, and experiments.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::mesh::TriangleMesh;
use crate::vec3::Vec3;

/// Axis-aligned unit cube `[0, 1]³` with each side split into an `n × n`
/// grid of quads, two triangles per quad (outward orientation).
///
/// `n = 1` gives the minimal 12-triangle cube; `n = 10` gives the classic
/// 10 × 10 × 2-triangles-per-side benchmark cube.
pub fn unit_cube(n: usize) -> TriangleMesh {
    assert!(n >= 1);
    let mut builder = CubeBuilder::new(n);
    // Each side is parametrized so that e1 × e2 equals the outward normal.
    let o = [0, 0, 0];
    let ex = [1, 0, 0];
    let ey = [0, 1, 0];
    let ez = [0, 0, 1];
    let far = |axis: usize| {
        let mut p = [0usize; 3];
        p[axis] = n;
        p
    };
    builder.add_side(far(0), ey, ez); // x = 1, normal +x
    builder.add_side(o, ez, ey); // x = 0, normal -x
    builder.add_side(far(1), ez, ex); // y = 1, normal +y
    builder.add_side(o, ex, ez); // y = 0, normal -y
    builder.add_side(far(2), ex, ey); // z = 1, normal +z
    builder.add_side(o, ey, ex); // z = 0, normal -z
    builder.build()
}

struct CubeBuilder {
    n: usize,
    lattice: BTreeMap<[usize; 3], usize>,
    vertices: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
}

impl CubeBuilder {
    fn new(n: usize) -> Self {
        CubeBuilder { n, lattice: BTreeMap::new(), vertices: Vec::new(), triangles: Vec::new() }
    }

    fn vertex(&mut self, key: [usize; 3]) -> usize {
        let n = self.n;
        let next = self.vertices.len();
        let vertices = &mut self.vertices;
        *self.lattice.entry(key).or_insert_with(|| {
            vertices.push(Vec3::new(
                key[0] as f64 / n as f64,
                key[1] as f64 / n as f64,
                key[2] as f64 / n as f64,
            ));
            next
        })
    }

    fn add_side(&mut self, origin: [usize; 3], e1: [usize; 3], e2: [usize; 3]) {
        let at = |origin: [usize; 3], u: usize, v: usize| {
            [
                origin[0] + u * e1[0] + v * e2[0],
                origin[1] + u * e1[1] + v * e2[1],
                origin[2] + u * e1[2] + v * e2[2],
            ]
        };
        for u in 0..self.n {
            for v in 0..self.n {
                let p00 = self.vertex(at(origin, u, v));
                let p10 = self.vertex(at(origin, u + 1, v));
                let p11 = self.vertex(at(origin, u + 1, v + 1));
                let p01 = self.vertex(at(origin, u, v + 1));
                self.triangles.push([p00, p10, p11]);
                self.triangles.push([p00, p11, p01]);
            }
        }
    }

    fn build(self) -> TriangleMesh {
        TriangleMesh::new(self.vertices, self.triangles)
            .expect("cube construction yields a valid manifold")
    }
}

/// Open planar grid in the z = 0 plane: `(nx + 1) × (ny + 1)` vertices at
/// integer multiples of `spacing`, two upward-facing triangles per cell.
pub fn flat_grid(nx: usize, ny: usize, spacing: f64) -> TriangleMesh {
    assert!(nx >= 1 && ny >= 1);
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            vertices.push(Vec3::new(i as f64 * spacing, j as f64 * spacing, 0.0));
        }
    }
    let idx = |i: usize, j: usize| j * (nx + 1) + i;
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            triangles.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
            triangles.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    TriangleMesh::new(vertices, triangles).expect("grid construction yields a valid mesh")
}

/// Unit cube with the corner at (1, 1, 1) cut off by the plane through the
/// three adjacent corners, so a flat equilateral triangle replaces the
/// corner. Seven vertices, ten triangles, closed and outward-oriented.
pub fn chopped_corner_cube() -> TriangleMesh {
    let vertices = alloc::vec![
        Vec3::new(0.0, 0.0, 0.0), // 0
        Vec3::new(1.0, 0.0, 0.0), // 1
        Vec3::new(0.0, 1.0, 0.0), // 2
        Vec3::new(0.0, 0.0, 1.0), // 3
        Vec3::new(1.0, 1.0, 0.0), // 4
        Vec3::new(1.0, 0.0, 1.0), // 5
        Vec3::new(0.0, 1.0, 1.0), // 6
    ];
    let triangles = alloc::vec![
        [0, 2, 4],
        [0, 4, 1], // z = 0
        [0, 1, 5],
        [0, 5, 3], // y = 0
        [0, 3, 6],
        [0, 6, 2], // x = 0
        [1, 4, 5], // x = 1 (cut)
        [2, 6, 4], // y = 1 (cut)
        [3, 5, 6], // z = 1 (cut)
        [4, 6, 5], // corner plane
    ];
    TriangleMesh::new(vertices, triangles).expect("chopped cube is a valid manifold")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubes_are_closed_manifolds() {
        for n in [1, 2, 3, 10] {
            let cube = unit_cube(n);
            assert!(cube.boundary_edges().is_empty());
            assert_eq!(cube.triangle_count(), 12 * n * n);
            assert_eq!(
                cube.vertex_count() as i64 - cube.edge_count() as i64
                    + cube.triangle_count() as i64,
                2,
                "Euler characteristic for n = {n}"
            );
        }
    }

    #[test]
    fn cube_normals_point_outward() {
        let cube = unit_cube(2);
        let center = Vec3::new(0.5, 0.5, 0.5);
        for t in 0..cube.triangle_count() {
            let [a, b, c] = cube.triangles()[t];
            let centroid =
                (cube.vertices()[a] + cube.vertices()[b] + cube.vertices()[c]) / 3.0;
            assert!(cube.face_normal(t).dot(centroid - center) > 0.0);
        }
    }

    #[test]
    fn chopped_cube_is_a_closed_manifold() {
        let mesh = chopped_corner_cube();
        assert_eq!(mesh.vertex_count(), 7);
        assert_eq!(mesh.triangle_count(), 10);
        assert_eq!(mesh.edge_count(), 15);
        assert!(mesh.boundary_edges().is_empty());
        let sqrt3 = libm::sqrt(3.0);
        let corner_normal = Vec3::new(1.0 / sqrt3, 1.0 / sqrt3, 1.0 / sqrt3);
        assert!((mesh.face_normal(9) - corner_normal).norm() < 1e-15);
    }

    #[test]
    fn grid_normals_are_exactly_vertical() {
        let grid = flat_grid(3, 2, 0.5);
        for t in 0..grid.triangle_count() {
            assert_eq!(grid.face_normal(t), Vec3::new(0.0, 0.0, 1.0));
        }
    }
}
