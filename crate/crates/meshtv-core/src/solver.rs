//! Split Bregman (ADMM) iteration for denoising and inpainting, plus
//! minimal-surface initialization of inpainting patches.
//!
//! One outer iteration performs, in order:
//!
//! 1. **x-step** — one or several explicit gradient steps on the augmented
//!    Lagrangian with respect to the free vertex positions, recomputing edge
//!    lengths, normals and co-normals after every accepted step;
//! 2. **d-step** — the per-edge closed-form minimizer
//!    `d_E = shrink(s_E + b_E, β/λ)` (soft thresholding);
//! 3. **b-step** — the scaled multiplier update `b_E ← b_E + s_E - d_E`.
//!
//! Both variables start at zero. Denoising passes the noisy positions as
//! data; inpainting passes no data and fixes every vertex outside the hole
//! through a [`VertexMask`]. Gradient steps that would push a triangle to or
//! below the area floor are rejected and retried with half the step length,
//! so every accepted iterate keeps strictly positive triangle areas.
//!
//! Everything is evaluated in a fixed sequential order, so two runs with
//! identical inputs produce bit-identical meshes.

use alloc::vec::Vec;

use crate::energy::{augmented_lagrangian, lagrangian_gradient, tv_of_normal};
use crate::energy::{BregmanVariables, SolverParams};
use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::sphere::signed_normal_distance;
use crate::vec3::Vec3;

/// Maximum step-length halvings before a gradient step counts as failed.
const MAX_HALVINGS: u32 = 30;

/// The set of vertices the solver may move; the complement stays fixed
/// bit-for-bit (inpainting boundary and intact region).
#[derive(Clone, Debug, PartialEq)]
pub struct VertexMask {
    free: Vec<bool>,
}

impl VertexMask {
    /// Every vertex free — the denoising mask.
    pub fn all_free(vertex_count: usize) -> Self {
        VertexMask { free: alloc::vec![true; vertex_count] }
    }

    /// Only the listed vertices are free to move.
    pub fn from_free_indices(vertex_count: usize, free: &[usize]) -> Result<Self> {
        let mut mask = alloc::vec![false; vertex_count];
        for &v in free {
            if v >= vertex_count {
                return Err(Error::MaskIndexOutOfRange { index: v });
            }
            mask[v] = true;
        }
        Ok(VertexMask { free: mask })
    }

    pub fn is_free(&self, vertex: usize) -> bool {
        self.free.get(vertex).copied().unwrap_or(false)
    }

    pub fn vertex_count(&self) -> usize {
        self.free.len()
    }

    pub fn free_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    pub fn free_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.free.iter().enumerate().filter_map(|(v, &f)| f.then_some(v))
    }

    fn check(&self, mesh: &TriangleMesh) -> Result<()> {
        if self.free.len() != mesh.vertex_count() {
            return Err(Error::MaskLengthMismatch {
                expected: mesh.vertex_count(),
                got: self.free.len(),
            });
        }
        Ok(())
    }
}

/// Telemetry of one outer iteration.
#[derive(Clone, Copy, Debug)]
pub struct IterationReport {
    /// 1-based outer iteration number.
    pub outer_index: usize,
    /// Augmented Lagrangian after the multiplier update.
    pub lagrangian: f64,
    /// Total variation of the normal of the current mesh.
    pub tv: f64,
    /// `max_E |d_E - s_E - b_E|` right after the d-step, with the multiplier
    /// the shrinkage actually used.
    pub max_residual: f64,
    /// Smallest triangle area of the accepted iterate.
    pub min_area: f64,
}

/// Soft thresholding: `max(|v| - threshold, 0) · sign(v)`.
///
/// The exact minimizer of `threshold·|d| + ½ (d - v)²`, and with
/// `threshold = β/λ` the per-edge d-step of the split Bregman iteration.
pub fn shrink(v: f64, threshold: f64) -> f64 {
    debug_assert!(threshold >= 0.0);
    let magnitude = v.abs() - threshold;
    if magnitude > 0.0 {
        if v > 0.0 {
            magnitude
        } else {
            -magnitude
        }
    } else {
        0.0
    }
}

/// d-step: per interior edge, `d_E = shrink(s_E + b_E, β/λ)`; multipliers
/// are left untouched.
pub fn d_step(
    mesh: &TriangleMesh,
    vars: &BregmanVariables,
    params: &SolverParams,
) -> Result<BregmanVariables> {
    Ok(d_step_with_residual(mesh, vars, params)?.0)
}

fn d_step_with_residual(
    mesh: &TriangleMesh,
    vars: &BregmanVariables,
    params: &SolverParams,
) -> Result<(BregmanVariables, f64)> {
    if !vars.keyed_to(mesh) {
        return Err(Error::VariableKeyMismatch);
    }
    let threshold = params.beta / params.lambda;
    let mut next = vars.clone();
    let mut max_residual = 0.0f64;
    for frame in mesh.edge_frames() {
        let s = signed_normal_distance(&frame)?;
        let b = vars.b[&frame.edge];
        let d = shrink(s + b, threshold);
        max_residual = max_residual.max((d - s - b).abs());
        next.d.insert(frame.edge, d);
    }
    Ok((next, max_residual))
}

/// b-step: `b_E ← b_E + s_E - d_E` per interior edge.
pub fn b_step(mesh: &TriangleMesh, vars: &BregmanVariables) -> Result<BregmanVariables> {
    if !vars.keyed_to(mesh) {
        return Err(Error::VariableKeyMismatch);
    }
    let mut next = vars.clone();
    for frame in mesh.edge_frames() {
        let s = signed_normal_distance(&frame)?;
        let increment = s - vars.d[&frame.edge];
        *next.b.get_mut(&frame.edge).unwrap() += increment;
    }
    Ok(next)
}

/// x-step: `grad_steps_per_outer` explicit gradient-descent steps
/// `x ← x - τ ∇L` restricted to the free vertices, with area-floor
/// safeguarding (step rejection and halving of τ, fresh for every step).
pub fn x_step(
    mesh: &TriangleMesh,
    data_vertices: Option<&[Vec3]>,
    vars: &BregmanVariables,
    params: &SolverParams,
    mask: &VertexMask,
) -> Result<TriangleMesh> {
    params.validate()?;
    mask.check(mesh)?;
    let mut current = mesh.clone();
    for _ in 0..params.grad_steps_per_outer {
        let gradient = lagrangian_gradient(&current, data_vertices, vars, params, mask)?;
        current = descend(&current, &gradient, mask, params.step_length, params.area_floor)?;
    }
    Ok(current)
}

/// Attempts `x - τ g` on the free vertices, halving τ on area-floor
/// violations up to [`MAX_HALVINGS`] times.
fn descend(
    mesh: &TriangleMesh,
    gradient: &[Vec3],
    mask: &VertexMask,
    step_length: f64,
    area_floor: f64,
) -> Result<TriangleMesh> {
    let mut tau = step_length;
    let mut halvings = 0u32;
    loop {
        let positions: Vec<Vec3> = mesh
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, &p)| if mask.is_free(v) { p - gradient[v] * tau } else { p })
            .collect();
        match mesh.with_positions(positions, area_floor) {
            Ok(next) => return Ok(next),
            Err(Error::DegenerateTriangle { triangle, .. }) => {
                if halvings >= MAX_HALVINGS {
                    return Err(Error::StepRejected { triangle, halvings });
                }
                halvings += 1;
                tau *= 0.5;
            }
            Err(other) => return Err(other),
        }
    }
}

/// Runs `outer_iters` split Bregman iterations from `b = d = 0`.
///
/// `data_vertices` present selects the denoising Lagrangian; `None` the
/// inpainting one. Returns the final mesh and one report per iteration.
pub fn split_bregman(
    mesh: &TriangleMesh,
    data_vertices: Option<&[Vec3]>,
    params: &SolverParams,
    mask: &VertexMask,
) -> Result<(TriangleMesh, Vec<IterationReport>)> {
    params.validate()?;
    mask.check(mesh)?;
    if let Some(data) = data_vertices {
        if data.len() != mesh.vertex_count() {
            return Err(Error::DataLengthMismatch {
                expected: mesh.vertex_count(),
                got: data.len(),
            });
        }
    }
    let mut current = mesh.clone();
    let mut vars = BregmanVariables::zeros(mesh);
    let mut reports = Vec::with_capacity(params.outer_iters);
    for outer in 0..params.outer_iters {
        let previous_positions: Option<Vec<Vec3>> =
            params.early_stop.map(|_| current.vertices().to_vec());

        current = x_step(&current, data_vertices, &vars, params, mask)?;
        let (after_d, max_residual) = d_step_with_residual(&current, &vars, params)?;
        vars = b_step(&current, &after_d)?;

        reports.push(IterationReport {
            outer_index: outer + 1,
            lagrangian: augmented_lagrangian(&current, data_vertices, &vars, params)?,
            tv: tv_of_normal(&current),
            max_residual,
            min_area: current.min_face_area(),
        });

        if let (Some(stop), Some(previous)) = (params.early_stop, previous_positions) {
            let moved = current
                .vertices()
                .iter()
                .zip(&previous)
                .map(|(&p, &q)| (p - q).norm())
                .fold(0.0f64, f64::max);
            let diagonal = bounding_box_diagonal(&current);
            if max_residual < stop.max_residual && moved < stop.relative_x_change * diagonal {
                break;
            }
        }
    }
    Ok((current, reports))
}

fn bounding_box_diagonal(mesh: &TriangleMesh) -> f64 {
    let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for &p in mesh.vertices() {
        lo = Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    (hi - lo).norm()
}

/// Gradient descent on the total triangle area over the free vertices, with
/// the same area-floor safeguard as the x-step. Produces the initial guess
/// for inpainting: a near-minimal surface spanning the hole's boundary.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // a NaN step length must fail
pub fn minimal_surface_init(
    mesh: &TriangleMesh,
    mask: &VertexMask,
    step_length: f64,
    iters: usize,
) -> Result<TriangleMesh> {
    if !(step_length > 0.0) {
        return Err(Error::InvalidParameter { name: "step_length" });
    }
    mask.check(mesh)?;
    let mut current = mesh.clone();
    for _ in 0..iters {
        let gradient = area_gradient(&current, mask);
        current = descend(&current, &gradient, mask, step_length, crate::mesh::DEFAULT_AREA_FLOOR)?;
    }
    Ok(current)
}

/// Gradient of the total triangle area: for vertex `i` of a triangle with
/// unit normal `n` and opposite edge vector `e_i`, `∇_{p_i} A = ½ n × e_i`.
fn area_gradient(mesh: &TriangleMesh, mask: &VertexMask) -> Vec<Vec3> {
    let positions = mesh.vertices();
    let mut grad = alloc::vec![Vec3::ZERO; mesh.vertex_count()];
    for tri in mesh.triangles() {
        let p = [positions[tri[0]], positions[tri[1]], positions[tri[2]]];
        let normal = (p[1] - p[0]).cross(p[2] - p[0]).normalized();
        for i in 0..3 {
            if mask.is_free(tri[i]) {
                let e_opp = p[(i + 2) % 3] - p[(i + 1) % 3];
                grad[tri[i]] += normal.cross(e_opp) * 0.5;
            }
        }
    }
    grad
}
