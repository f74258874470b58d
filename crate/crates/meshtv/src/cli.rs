//! The `meshtv` command-line pipeline.
//!
//! Every subcommand shares one flag set; flags that a command cannot use are
//! rejected rather than silently ignored. Any flag can also come from a
//! `key = value` config file (`--config`), with explicit flags taking
//! precedence. Results go to stdout as `key=value` lines; solver telemetry
//! goes to a CSV file with the effective configuration echoed on top.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use meshtv_core::energy::{augmented_lagrangian, tv_of_normal, BregmanVariables, SolverParams};
use meshtv_core::metrics::{mean_angular_error, vertex_l2_error};
use meshtv_core::noise::{add_normal_noise, NoiseSpec};
use meshtv_core::solver::{minimal_surface_init, split_bregman, IterationReport, VertexMask};
use meshtv_core::TriangleMesh;

use crate::config::{load_options, parse_box, Command, Options, Preset};
use crate::error::{Error, Result};
use crate::io::{load_mesh, save_mesh};
use crate::mask::{load_mask, mask_from_box};
use crate::telemetry::write_telemetry;

/// Feature-preserving mesh denoising and inpainting driven by the total
/// variation of the surface normal.
#[derive(Parser, Debug)]
#[command(name = "meshtv", version, about)]
pub struct Cli {
    /// Config file of `key = value` lines; explicit flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Displace vertices along their normals with seeded Gaussian noise.
    AddNoise(Flags),
    /// Remove noise while preserving sharp creases (split Bregman).
    Denoise(Flags),
    /// Reconstruct a masked region with fixed surroundings.
    Inpaint(Flags),
    /// Print the total variation of the normal field.
    Tv(Flags),
    /// Shrink the masked patch toward a minimal (least-area) surface.
    MinSurface(Flags),
    /// Compare a mesh against a reference mesh.
    Metrics(Flags),
}

/// The shared flag set. Commands reject flags they cannot honor.
#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Input mesh (.obj or .ply).
    pub input: Option<PathBuf>,
    /// Output mesh path.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Data mesh for the fidelity term (denoise; defaults to the input).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Ground-truth mesh (metrics).
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Free-vertex index file (inpaint, min-surface).
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Select free vertices inside a box instead of from a file.
    #[arg(long, value_name = "X0,Y0,Z0,X1,Y1,Z1")]
    pub mask_from_box: Option<String>,
    /// Write per-iteration CSV telemetry here.
    #[arg(long)]
    pub telemetry: Option<PathBuf>,
    /// Regularization weight β.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Penalty weight λ.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Gradient step length τ [default: 0.01].
    #[arg(long)]
    pub step: Option<f64>,
    /// Outer iterations [default: 200].
    #[arg(long)]
    pub outer: Option<usize>,
    /// Gradient steps per outer iteration [default: 1].
    #[arg(long)]
    pub grad_steps: Option<usize>,
    /// Triangle-area floor [default: 1e-12].
    #[arg(long)]
    pub area_floor: Option<f64>,
    /// Noise standard deviation as a multiple of the mean edge length.
    #[arg(long)]
    pub sigma_factor: Option<f64>,
    /// Noise seed [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Parameter preset: bunny-low (β=0.003, λ=0.01) or bunny-high
    /// (β=0.01, λ=0.01). Explicit --beta/--lambda win.
    #[arg(long)]
    pub preset: Option<String>,
    /// Skip the minimal-surface initialization before inpainting.
    #[arg(long)]
    pub skip_init: bool,
    /// Step length of the minimal-surface initialization [default: --step].
    #[arg(long)]
    pub init_step: Option<f64>,
    /// Iterations of the minimal-surface initialization [default: 100].
    #[arg(long)]
    pub init_iters: Option<usize>,
    /// Iterations of the min-surface command [default: 100].
    #[arg(long)]
    pub iters: Option<usize>,
}

impl Flags {
    fn into_options(self) -> Result<Options> {
        Ok(Options {
            input: self.input,
            output: self.output,
            data: self.data,
            reference: self.reference,
            mask: self.mask,
            mask_from_box: self.mask_from_box.as_deref().map(parse_box).transpose()?,
            telemetry: self.telemetry,
            beta: self.beta,
            lambda: self.lambda,
            step: self.step,
            outer: self.outer,
            grad_steps: self.grad_steps,
            area_floor: self.area_floor,
            sigma_factor: self.sigma_factor,
            seed: self.seed,
            preset: self.preset.as_deref().map(Preset::parse).transpose()?,
            skip_init: self.skip_init.then_some(true),
            init_step: self.init_step,
            init_iters: self.init_iters,
            iters: self.iters,
        })
    }
}

/// Merges config file and flags, validates, runs, and returns the stdout
/// `key=value` lines.
pub fn execute(cli: Cli) -> Result<Vec<(String, String)>> {
    let (command, flags) = match cli.command {
        CliCommand::AddNoise(f) => (Command::AddNoise, f),
        CliCommand::Denoise(f) => (Command::Denoise, f),
        CliCommand::Inpaint(f) => (Command::Inpaint, f),
        CliCommand::Tv(f) => (Command::Tv, f),
        CliCommand::MinSurface(f) => (Command::MinSurface, f),
        CliCommand::Metrics(f) => (Command::Metrics, f),
    };
    let file_options =
        cli.config.as_deref().map(load_options).transpose()?.unwrap_or_default();
    let options = Options::default()
        .merged_with(&file_options)
        .merged_with(&flags.into_options()?);
    run(command, &options)
}

/// Runs one pipeline command on a merged options bag.
pub fn run(command: Command, options: &Options) -> Result<Vec<(String, String)>> {
    reject_foreign_flags(command, options)?;
    match command {
        Command::AddNoise => run_add_noise(options),
        Command::Denoise => run_denoise(options),
        Command::Inpaint => run_inpaint(options),
        Command::Tv => run_tv(options),
        Command::MinSurface => run_min_surface(options),
        Command::Metrics => run_metrics(options),
    }
}

fn reject_foreign_flags(command: Command, o: &Options) -> Result<()> {
    let set: Vec<(&str, bool)> = vec![
        ("input", o.input.is_some()),
        ("output", o.output.is_some()),
        ("data", o.data.is_some()),
        ("reference", o.reference.is_some()),
        ("mask", o.mask.is_some()),
        ("mask-from-box", o.mask_from_box.is_some()),
        ("telemetry", o.telemetry.is_some()),
        ("beta", o.beta.is_some()),
        ("lambda", o.lambda.is_some()),
        ("step", o.step.is_some()),
        ("outer", o.outer.is_some()),
        ("grad-steps", o.grad_steps.is_some()),
        ("area-floor", o.area_floor.is_some()),
        ("sigma-factor", o.sigma_factor.is_some()),
        ("seed", o.seed.is_some()),
        ("preset", o.preset.is_some()),
        ("skip-init", o.skip_init.is_some()),
        ("init-step", o.init_step.is_some()),
        ("init-iters", o.init_iters.is_some()),
        ("iters", o.iters.is_some()),
    ];
    let allowed: &[&str] = match command {
        Command::AddNoise => &["input", "output", "sigma-factor", "seed"],
        Command::Denoise => &[
            "input", "output", "data", "telemetry", "beta", "lambda", "step", "outer",
            "grad-steps", "area-floor", "preset",
        ],
        Command::Inpaint => &[
            "input", "output", "mask", "mask-from-box", "telemetry", "beta", "lambda", "step",
            "outer", "grad-steps", "area-floor", "preset", "skip-init", "init-step",
            "init-iters",
        ],
        Command::Tv => &["input"],
        Command::MinSurface => &["input", "output", "mask", "mask-from-box", "step", "iters"],
        Command::Metrics => &["input", "reference"],
    };
    for (name, is_set) in set {
        if is_set && !allowed.contains(&name) {
            return Err(Error::InvalidArguments(format!(
                "--{name} is not valid for `{command}`"
            )));
        }
    }
    Ok(())
}

fn required<'a, T>(value: &'a Option<T>, name: &str, command: Command) -> Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| Error::InvalidArguments(format!("`{command}` requires --{name}")))
}

fn solver_params(o: &Options, command: Command) -> Result<SolverParams> {
    let beta = *required(&o.beta, "beta", command)?;
    let lambda = *required(&o.lambda, "lambda", command)?;
    let mut params = SolverParams::new(beta, lambda);
    if let Some(step) = o.step {
        params = params.with_step_length(step);
    }
    if let Some(outer) = o.outer {
        params = params.with_outer_iters(outer);
    }
    if let Some(steps) = o.grad_steps {
        params = params.with_grad_steps_per_outer(steps);
    }
    if let Some(floor) = o.area_floor {
        params = params.with_area_floor(floor);
    }
    params.validate()?;
    Ok(params)
}

fn load_input(o: &Options, command: Command) -> Result<TriangleMesh> {
    load_mesh(required(&o.input, "input", command)?, None)
}

fn resolve_mask(o: &Options, mesh: &TriangleMesh, command: Command) -> Result<VertexMask> {
    match (&o.mask, o.mask_from_box) {
        (Some(path), None) => load_mask(path, mesh.vertex_count()),
        (None, Some(bounds)) => Ok(mask_from_box(mesh, bounds)),
        (Some(_), Some(_)) => Err(Error::InvalidArguments(
            "--mask and --mask-from-box are mutually exclusive".into(),
        )),
        (None, None) => Err(Error::InvalidArguments(format!(
            "`{command}` requires --mask or --mask-from-box"
        ))),
    }
}

/// Provenance entries echoed into telemetry files: the command plus every
/// effective option, including resolved defaults.
fn provenance(command: Command, effective: &Options) -> Vec<(String, String)> {
    let mut entries = vec![("command".to_owned(), command.to_string())];
    entries.extend(effective.effective_entries());
    entries
}

fn maybe_write_telemetry(
    command: Command,
    effective: &Options,
    reports: &[IterationReport],
) -> Result<()> {
    if let Some(path) = &effective.telemetry {
        write_telemetry(path, &provenance(command, effective), reports)?;
    }
    Ok(())
}

fn fmt(value: f64) -> String {
    format!("{value}")
}

fn run_add_noise(o: &Options) -> Result<Vec<(String, String)>> {
    let command = Command::AddNoise;
    let spec = NoiseSpec {
        sigma_factor: *required(&o.sigma_factor, "sigma-factor", command)?,
        seed: o.seed.unwrap_or(0),
    };
    let output = required(&o.output, "output", command)?;
    let mesh = load_input(o, command)?;
    let noisy = add_normal_noise(&mesh, &spec)?;
    save_mesh(&noisy, output, None)?;
    Ok(vec![
        ("sigma".to_owned(), fmt(spec.sigma_factor * mesh.mean_edge_length())),
        ("tv".to_owned(), fmt(tv_of_normal(&noisy))),
    ])
}

fn run_denoise(o: &Options) -> Result<Vec<(String, String)>> {
    let command = Command::Denoise;
    let params = solver_params(o, command)?;
    let output = required(&o.output, "output", command)?;
    let mesh = load_input(o, command)?;
    let data_mesh = match &o.data {
        Some(path) => Some(load_mesh(path, None)?),
        None => None,
    };
    let data: Vec<_> = match &data_mesh {
        Some(m) => m.vertices().to_vec(),
        None => mesh.vertices().to_vec(),
    };
    let mask = VertexMask::all_free(mesh.vertex_count());
    let (out, reports) = split_bregman(&mesh, Some(&data), &params, &mask)?;
    save_mesh(&out, output, None)?;

    let mut effective = o.clone();
    effective.step = Some(params.step_length);
    effective.outer = Some(params.outer_iters);
    effective.grad_steps = Some(params.grad_steps_per_outer);
    effective.area_floor = Some(params.area_floor);
    maybe_write_telemetry(command, &effective, &reports)?;

    let lagrangian = match reports.last() {
        Some(r) => r.lagrangian,
        None => augmented_lagrangian(&out, Some(&data), &BregmanVariables::zeros(&out), &params)?,
    };
    Ok(vec![
        ("tv".to_owned(), fmt(tv_of_normal(&out))),
        ("lagrangian".to_owned(), fmt(lagrangian)),
    ])
}

fn run_inpaint(o: &Options) -> Result<Vec<(String, String)>> {
    let command = Command::Inpaint;
    let params = solver_params(o, command)?;
    let output = required(&o.output, "output", command)?;
    let mesh = load_input(o, command)?;
    let mask = resolve_mask(o, &mesh, command)?;
    let skip_init = o.skip_init.unwrap_or(false);
    let init_step = o.init_step.unwrap_or(params.step_length);
    let init_iters = o.init_iters.unwrap_or(100);
    let start = if skip_init {
        mesh
    } else {
        minimal_surface_init(&mesh, &mask, init_step, init_iters)?
    };
    let (out, reports) = split_bregman(&start, None, &params, &mask)?;
    save_mesh(&out, output, None)?;

    let mut effective = o.clone();
    effective.step = Some(params.step_length);
    effective.outer = Some(params.outer_iters);
    effective.grad_steps = Some(params.grad_steps_per_outer);
    effective.area_floor = Some(params.area_floor);
    effective.skip_init = Some(skip_init);
    effective.init_step = Some(init_step);
    effective.init_iters = Some(init_iters);
    maybe_write_telemetry(command, &effective, &reports)?;

    let lagrangian = match reports.last() {
        Some(r) => r.lagrangian,
        None => augmented_lagrangian(&out, None, &BregmanVariables::zeros(&out), &params)?,
    };
    Ok(vec![
        ("tv".to_owned(), fmt(tv_of_normal(&out))),
        ("lagrangian".to_owned(), fmt(lagrangian)),
        ("free_vertices".to_owned(), mask.free_count().to_string()),
    ])
}

fn run_tv(o: &Options) -> Result<Vec<(String, String)>> {
    let mesh = load_input(o, Command::Tv)?;
    Ok(vec![("tv".to_owned(), fmt(tv_of_normal(&mesh)))])
}

fn run_min_surface(o: &Options) -> Result<Vec<(String, String)>> {
    let command = Command::MinSurface;
    let output = required(&o.output, "output", command)?;
    let mesh = load_input(o, command)?;
    let mask = resolve_mask(o, &mesh, command)?;
    let step = o.step.unwrap_or(0.01);
    let iters = o.iters.unwrap_or(100);
    let out = minimal_surface_init(&mesh, &mask, step, iters)?;
    save_mesh(&out, output, None)?;
    let area: f64 = (0..out.triangle_count()).map(|t| out.face_area(t)).sum();
    Ok(vec![
        ("tv".to_owned(), fmt(tv_of_normal(&out))),
        ("area".to_owned(), fmt(area)),
    ])
}

fn run_metrics(o: &Options) -> Result<Vec<(String, String)>> {
    let command = Command::Metrics;
    let reference_path = required(&o.reference, "reference", command)?;
    let mesh = load_input(o, command)?;
    let reference = load_mesh(reference_path, None)?;
    Ok(vec![
        ("mean_angular_error".to_owned(), fmt(mean_angular_error(&mesh, &reference)?)),
        ("vertex_l2_error".to_owned(), fmt(vertex_l2_error(&mesh, &reference)?)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn foreign_flags_are_rejected() {
        let o = Options { data: Some(PathBuf::from("x.obj")), ..Default::default() };
        let err = reject_foreign_flags(Command::Inpaint, &o).unwrap_err();
        assert!(err.to_string().contains("--data"));
        assert!(reject_foreign_flags(Command::Denoise, &o).is_ok());

        let o = Options { sigma_factor: Some(0.3), ..Default::default() };
        assert!(reject_foreign_flags(Command::Tv, &o).is_err());
        assert!(reject_foreign_flags(Command::AddNoise, &o).is_ok());
    }

    #[test]
    fn missing_required_flags_are_reported() {
        let err = run(Command::Tv, &Options::default()).unwrap_err();
        assert!(err.to_string().contains("requires --input"));
        let err = run(
            Command::Metrics,
            &Options { input: Some(PathBuf::from("a.obj")), ..Default::default() },
        )
        .unwrap_err();
        assert!(err.to_string().contains("requires --reference"));
    }

    #[test]
    fn mask_sources_are_mutually_exclusive() {
        let mesh = meshtv_core::primitives::unit_cube(1);
        let o = Options {
            mask: Some(PathBuf::from("m.mask")),
            mask_from_box: Some([0.0; 6]),
            ..Default::default()
        };
        assert!(resolve_mask(&o, &mesh, Command::Inpaint).is_err());
    }
}
