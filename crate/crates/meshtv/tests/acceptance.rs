//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N (...): PASS/FAIL` line (visible with `--nocapture`).
//!
//! Run with:
//!
//! ```text
//! cargo test -p meshtv --test acceptance -- --nocapture
//! ```

use std::time::{Duration, Instant};

use meshtv_core::energy::{
    augmented_lagrangian, lagrangian_gradient, tv_of_normal, BregmanVariables, SolverParams,
};
use meshtv_core::metrics::mean_angular_error;
use meshtv_core::noise::{add_normal_noise, NoiseSpec, SplitMix64};
use meshtv_core::primitives::{chopped_corner_cube, flat_grid, unit_cube};
use meshtv_core::solver::{minimal_surface_init, shrink, split_bregman, VertexMask};
use meshtv_core::sphere::signed_normal_distance;
use meshtv_core::{EdgeFrame, TriangleMesh, Vec3};

const SIX_PI: f64 = 6.0 * std::f64::consts::PI;

fn report(number: u32, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {number} ({name}): PASS");
    } else {
        println!("criterion {number} ({name}): FAIL");
        for f in failures {
            println!("  - {f}");
        }
        panic!("criterion {number} failed");
    }
}

fn random_unit(rng: &mut SplitMix64) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.next_f64() * 2.0 - 1.0,
            rng.next_f64() * 2.0 - 1.0,
            rng.next_f64() * 2.0 - 1.0,
        );
        let n = v.norm();
        if n > 0.1 && n < 1.0 {
            return v / n;
        }
    }
}

/// Randomized valid meshes with 8–50 vertices whose interior dihedral
/// angles all lie in (1e-3, π - 1e-3).
fn random_meshes(seed: u64, count: usize) -> Vec<TriangleMesh> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    let mut attempt = 0usize;
    while out.len() < count {
        attempt += 1;
        assert!(attempt < 10_000, "mesh generation stalled");
        let base = match rng.next_u64() % 5 {
            0 => unit_cube(1),
            1 => unit_cube(2),
            2 => flat_grid(3, 3, 1.0),
            3 => flat_grid(4, 4, 1.0),
            _ => flat_grid(6, 5, 1.0),
        };
        let jitter = 0.25 * base.mean_edge_length();
        let positions: Vec<Vec3> = base
            .vertices()
            .iter()
            .map(|&p| {
                p + Vec3::new(
                    (rng.next_f64() - 0.5) * jitter,
                    (rng.next_f64() - 0.5) * jitter,
                    (rng.next_f64() - 0.5) * jitter,
                )
            })
            .collect();
        let Ok(mesh) = base.with_positions(positions, 1e-6) else { continue };
        let angles_ok = mesh.edge_frames().iter().all(|f| {
            let theta = signed_normal_distance(f).map(f64::abs).unwrap_or(std::f64::consts::PI);
            theta > 1e-3 && theta < std::f64::consts::PI - 1e-3
        });
        if angles_ok {
            assert!(mesh.vertex_count() >= 8 && mesh.vertex_count() <= 50);
            out.push(mesh);
        }
    }
    out
}

#[test]
fn criterion_1_gradient_matches_finite_differences() {
    let started = Instant::now();
    let h = 1e-6;
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(2001);
    let meshes = random_meshes(1001, 24);
    for (i, mesh) in meshes.iter().enumerate() {
        let mut vars = BregmanVariables::zeros(mesh);
        for value in vars.d.values_mut() {
            *value = (rng.next_f64() - 0.5) * 1.2;
        }
        for value in vars.b.values_mut() {
            *value = (rng.next_f64() - 0.5) * 1.2;
        }
        let params = SolverParams::new(
            0.005 + rng.next_f64() * 0.1,
            0.05 + rng.next_f64() * 0.9,
        );
        let data: Vec<Vec3> = mesh
            .vertices()
            .iter()
            .map(|&p| {
                p + Vec3::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5, rng.next_f64() - 0.5)
                    * 0.04
            })
            .collect();
        let data_opt = (i % 2 == 0).then_some(data.as_slice());
        let mask = VertexMask::all_free(mesh.vertex_count());

        let analytic = lagrangian_gradient(mesh, data_opt, &vars, &params, &mask).unwrap();
        let mut numeric = vec![Vec3::ZERO; mesh.vertex_count()];
        for v in 0..mesh.vertex_count() {
            for axis in 0..3 {
                let eval = |delta: f64| {
                    let mut positions = mesh.vertices().to_vec();
                    match axis {
                        0 => positions[v].x += delta,
                        1 => positions[v].y += delta,
                        _ => positions[v].z += delta,
                    }
                    let moved = mesh.with_positions(positions, 0.0).unwrap();
                    augmented_lagrangian(&moved, data_opt, &vars, &params).unwrap()
                };
                let diff = (eval(h) - eval(-h)) / (2.0 * h);
                match axis {
                    0 => numeric[v].x = diff,
                    1 => numeric[v].y = diff,
                    _ => numeric[v].z = diff,
                }
            }
        }
        let diff: f64 = analytic
            .iter()
            .zip(&numeric)
            .map(|(a, n)| (*a - *n).norm_squared())
            .sum::<f64>()
            .sqrt();
        let scale: f64 =
            analytic.iter().map(|a| a.norm_squared()).sum::<f64>().sqrt().max(1e-12);
        let rel = diff / scale;
        if rel > 1e-6 {
            failures.push(format!("mesh {i}: relative error {rel:e}"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?} exceeds 10 s"));
    }
    report(1, "gradient correctness on 24 randomized meshes", &failures);
}

#[test]
fn criterion_2_tv_analytic_values() {
    let mut failures = Vec::new();
    let grid_tv = tv_of_normal(&flat_grid(6, 6, 1.0));
    if grid_tv != 0.0 {
        failures.push(format!("flat grid TV is {grid_tv:e}, expected exactly 0"));
    }
    for n in [1usize, 10] {
        let tv = tv_of_normal(&unit_cube(n));
        if (tv - SIX_PI).abs() > 1e-9 {
            failures.push(format!("cube n={n}: TV {tv} differs from 6π by {:e}", tv - SIX_PI));
        }
    }
    for s in [0.5, 2.0] {
        let cube = unit_cube(2);
        let scaled =
            cube.with_positions(cube.vertices().iter().map(|&p| p * s).collect(), 0.0).unwrap();
        let tv = tv_of_normal(&scaled);
        if (tv - SIX_PI * s).abs() > 1e-9 {
            failures.push(format!("scale {s}: TV {tv} differs from 6πs by {:e}", tv - SIX_PI * s));
        }
    }
    report(2, "TV analytic values (flat grid, cubes, scaling)", &failures);
}

#[test]
fn criterion_3_signed_distance_consistency() {
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(3003);
    let mut checked = 0;
    while checked < 1000 {
        let n_plus = random_unit(&mut rng);
        let n_minus = random_unit(&mut rng);
        if 1.0 + n_plus.dot(n_minus) <= 1e-9 {
            continue;
        }
        let helper = random_unit(&mut rng);
        let tangent = helper - n_plus * helper.dot(n_plus);
        if tangent.norm() < 1e-3 {
            continue;
        }
        let frame = EdgeFrame {
            edge: [0, 1],
            face_plus: 0,
            face_minus: 1,
            length: 1.0,
            n_plus,
            n_minus,
            mu_plus: tangent.normalized(),
            mu_minus: -tangent.normalized(),
        };
        let s = signed_normal_distance(&frame).unwrap();
        let reference = n_plus.dot(n_minus).clamp(-1.0, 1.0).acos();
        if (s.abs() - reference).abs() > 1e-12 {
            failures.push(format!(
                "frame {checked}: |s| = {} vs arccos = {reference}",
                s.abs()
            ));
        }
        checked += 1;
    }
    // Worked parametrization: s reproduces the signed dihedral angle.
    for alpha in [0.1f64, -0.1, 0.7, -0.7, 1.5, -1.5] {
        let (sin_a, cos_a) = alpha.sin_cos();
        let frame = EdgeFrame {
            edge: [0, 1],
            face_plus: 0,
            face_minus: 1,
            length: 1.0,
            n_plus: Vec3::new(sin_a, cos_a, 0.0),
            n_minus: Vec3::new(0.0, 1.0, 0.0),
            mu_plus: Vec3::new(-cos_a, sin_a, 0.0),
            mu_minus: Vec3::new(-1.0, 0.0, 0.0),
        };
        let s = signed_normal_distance(&frame).unwrap();
        if (s - alpha).abs() > 1e-12 {
            failures.push(format!("alpha {alpha}: s = {s}"));
        }
    }
    report(3, "|s| = arccos(n⁺·n⁻) on 1000 frames + signed examples", &failures);
}

#[test]
fn criterion_4_d_step_optimality() {
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(4004);
    for case in 0..1000 {
        let s = (rng.next_f64() - 0.5) * 2.0 * std::f64::consts::PI * 0.9;
        let b = (rng.next_f64() - 0.5) * 3.0;
        let beta = 1e-3 + rng.next_f64() * 0.5;
        let lambda = 1e-2 + rng.next_f64() * 2.0;
        let length = 0.05 + rng.next_f64() * 3.0;
        let v = s + b;
        let objective =
            |d: f64| beta * d.abs() * length + 0.5 * lambda * (d - v) * (d - v) * length;
        let mut lo = -(v.abs() + beta / lambda + 1.0);
        let mut hi = -lo;
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if objective(m1) < objective(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let d = shrink(v, beta / lambda);
        let margin = objective(d) - objective(oracle);
        if margin > 1e-8 {
            failures.push(format!(
                "case {case}: shrink objective beats oracle by {margin:e} (should be ≤ 1e-8)"
            ));
        }
    }
    report(4, "shrinkage optimality vs ternary-search oracle, 1000 cases", &failures);
}

/// The denoising experiment protocol: 10×10×2 unit cube, Gaussian normal
/// noise with σ = 0.3 × mean edge length, β = 0.01, λ = 0.1, τ = 0.01, one
/// gradient step per outer iteration, 200 outer iterations.
fn denoise_protocol() -> (TriangleMesh, TriangleMesh, TriangleMesh, Vec<f64>) {
    let clean = unit_cube(10);
    let noisy = add_normal_noise(&clean, &NoiseSpec { sigma_factor: 0.3, seed: 42 }).unwrap();
    let data: Vec<Vec3> = noisy.vertices().to_vec();
    let params = SolverParams::new(0.01, 0.1)
        .with_step_length(0.01)
        .with_grad_steps_per_outer(1)
        .with_outer_iters(200);
    let mask = VertexMask::all_free(noisy.vertex_count());
    let (out, reports) = split_bregman(&noisy, Some(&data), &params, &mask).unwrap();
    let min_areas = reports.iter().map(|r| r.min_area).collect();
    (clean, noisy, out, min_areas)
}

#[test]
fn criterion_5_denoising_protocol() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let (clean, noisy, out, min_areas) = denoise_protocol();
    let error_noisy = mean_angular_error(&noisy, &clean).unwrap();
    let error_out = mean_angular_error(&out, &clean).unwrap();
    if error_out > 0.5 * error_noisy {
        failures.push(format!(
            "angular error {error_out} not halved from noisy {error_noisy}"
        ));
    }
    let tv_noisy = tv_of_normal(&noisy);
    let tv_out = tv_of_normal(&out);
    if tv_out >= tv_noisy {
        failures.push(format!("tv {tv_out} did not drop below noisy {tv_noisy}"));
    }
    if min_areas.iter().any(|&a| a <= 1e-12) {
        failures.push("an accepted iterate hit the area floor".to_owned());
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:?} exceeds 60 s"));
    }
    println!(
        "  [denoise: angular error {error_noisy:.4} -> {error_out:.4}, tv {tv_noisy:.2} -> {tv_out:.2}]"
    );
    report(5, "denoising protocol halves the angular error", &failures);
}

/// Distance from a point to the surface of the unit cube [0,1]³.
fn distance_to_cube_surface(p: Vec3) -> f64 {
    let q = Vec3::new((p.x - 0.5).abs() - 0.5, (p.y - 0.5).abs() - 0.5, (p.z - 0.5).abs() - 0.5);
    let outside = Vec3::new(q.x.max(0.0), q.y.max(0.0), q.z.max(0.0)).norm();
    let inside = q.x.max(q.y).max(q.z).min(0.0);
    (outside + inside).abs()
}

#[test]
fn criterion_6_inpainting_recovers_the_cube_corner() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let cube = unit_cube(10);
    // Damaged region: the patch of surface vertices within 0.35 of the
    // corner (1,1,1); everything else stays pinned.
    let free: Vec<usize> = (0..cube.vertex_count())
        .filter(|&v| {
            let p = cube.vertices()[v];
            p.x >= 0.65 && p.y >= 0.65 && p.z >= 0.65
        })
        .collect();
    let mask = VertexMask::from_free_indices(cube.vertex_count(), &free).unwrap();

    let start = minimal_surface_init(&cube, &mask, 0.01, 100).unwrap();
    let start_deviation = start
        .vertices()
        .iter()
        .map(|&p| distance_to_cube_surface(p))
        .fold(0.0f64, f64::max);
    if start_deviation < 0.02 {
        failures.push(format!(
            "minimal-surface init left the corner nearly intact ({start_deviation}); the experiment would be vacuous"
        ));
    }

    let params = SolverParams::new(0.01, 0.1)
        .with_step_length(0.01)
        .with_grad_steps_per_outer(5)
        .with_outer_iters(2000);
    let (out, reports) = split_bregman(&start, None, &params, &mask).unwrap();
    let deviation = out
        .vertices()
        .iter()
        .map(|&p| distance_to_cube_surface(p))
        .fold(0.0f64, f64::max);
    if deviation > 1e-2 {
        failures.push(format!("max deviation {deviation} exceeds 1e-2"));
    }
    // Fixed vertices must not have moved at all.
    for v in 0..cube.vertex_count() {
        if !mask.is_free(v) && out.vertices()[v] != cube.vertices()[v] {
            failures.push(format!("fixed vertex {v} moved"));
            break;
        }
    }
    if reports.iter().any(|r| r.min_area <= 1e-12) {
        failures.push("an accepted iterate hit the area floor".to_owned());
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("runtime {elapsed:?} exceeds 120 s"));
    }
    println!(
        "  [inpaint: init deviation {start_deviation:.4} -> final {deviation:.5}, tv {:.4}]",
        tv_of_normal(&out)
    );
    report(6, "inpainting recovers the cube corner to 1e-2", &failures);
}

#[test]
fn criterion_7_chopped_corner_has_smaller_tv() {
    let mut failures = Vec::new();
    // Independent oracle: brute-force dihedral sum over face pairs sharing
    // two vertices, using acos directly.
    let mesh = chopped_corner_cube();
    let tris = mesh.triangles();
    let mut oracle = 0.0;
    for i in 0..tris.len() {
        for j in (i + 1)..tris.len() {
            let shared: Vec<usize> =
                tris[i].iter().copied().filter(|v| tris[j].contains(v)).collect();
            if shared.len() == 2 {
                let length = mesh.vertices()[shared[0]].distance(mesh.vertices()[shared[1]]);
                let cos = mesh.face_normal(i).dot(mesh.face_normal(j)).clamp(-1.0, 1.0);
                oracle += cos.acos() * length;
            }
        }
    }
    if oracle >= SIX_PI {
        failures.push(format!("oracle TV {oracle} is not below 6π = {SIX_PI}"));
    }
    let tv = tv_of_normal(&mesh);
    if (tv - oracle).abs() > 1e-9 {
        failures.push(format!("tv_of_normal {tv} disagrees with the oracle {oracle}"));
    }
    println!("  [chopped corner TV {oracle:.6} < 6π = {SIX_PI:.6}]");
    report(7, "corner-chopped cube has TV below 6π (both routes)", &failures);
}

#[test]
fn criterion_8_robustness_and_bit_identical_reruns() {
    let mut failures = Vec::new();
    let (_, _, first, min_areas_first) = denoise_protocol();
    let (_, _, second, min_areas_second) = denoise_protocol();
    for (v, (p, q)) in first.vertices().iter().zip(second.vertices()).enumerate() {
        if p.x.to_bits() != q.x.to_bits()
            || p.y.to_bits() != q.y.to_bits()
            || p.z.to_bits() != q.z.to_bits()
        {
            failures.push(format!("vertex {v} differs between identical runs"));
            break;
        }
    }
    if min_areas_first
        .iter()
        .chain(&min_areas_second)
        .any(|&a| a <= 1e-12)
    {
        failures.push("an accepted iterate hit the area floor".to_owned());
    }
    report(8, "repeated runs bit-identical, area floor never violated", &failures);
}
