//! Run configuration: one options bag shared by all subcommands, fed from a
//! `key = value` config file and/or command-line flags (flags win).

use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{io_err, parse_err, Error, Result};

/// Pipeline command. Mirrors the CLI subcommands one-to-one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    AddNoise,
    Denoise,
    Inpaint,
    Tv,
    MinSurface,
    Metrics,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Command::AddNoise => "add-noise",
            Command::Denoise => "denoise",
            Command::Inpaint => "inpaint",
            Command::Tv => "tv",
            Command::MinSurface => "min-surface",
            Command::Metrics => "metrics",
        };
        f.write_str(name)
    }
}

/// Parameter presets named after the denoising experiments they reproduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// β = 0.003, λ = 0.01 — gentler regularization.
    BunnyLow,
    /// β = 0.01, λ = 0.01 — stronger flattening.
    BunnyHigh,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Preset> {
        match name {
            "bunny-low" => Ok(Preset::BunnyLow),
            "bunny-high" => Ok(Preset::BunnyHigh),
            other => Err(Error::InvalidArguments(format!(
                "unknown preset `{other}` (expected bunny-low or bunny-high)"
            ))),
        }
    }

    pub fn beta_lambda(self) -> (f64, f64) {
        match self {
            Preset::BunnyLow => (0.003, 0.01),
            Preset::BunnyHigh => (0.01, 0.01),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::BunnyLow => "bunny-low",
            Preset::BunnyHigh => "bunny-high",
        }
    }
}

/// Every tunable of every subcommand, all optional. A value of `None` means
/// "not set here"; required fields are enforced per command after merging.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub data: Option<PathBuf>,
    pub reference: Option<PathBuf>,
    pub mask: Option<PathBuf>,
    pub mask_from_box: Option<[f64; 6]>,
    pub telemetry: Option<PathBuf>,
    pub beta: Option<f64>,
    pub lambda: Option<f64>,
    pub step: Option<f64>,
    pub outer: Option<usize>,
    pub grad_steps: Option<usize>,
    pub area_floor: Option<f64>,
    pub sigma_factor: Option<f64>,
    pub seed: Option<u64>,
    pub preset: Option<Preset>,
    pub skip_init: Option<bool>,
    pub init_step: Option<f64>,
    pub init_iters: Option<usize>,
    pub iters: Option<usize>,
}

macro_rules! take_if_set {
    ($dst:expr, $src:expr, [$($field:ident),* $(,)?]) => {
        $(if $src.$field.is_some() { $dst.$field = $src.$field.clone(); })*
    };
}

impl Options {
    /// Layers `overrides` on top of `self`: a preset in the overriding layer
    /// applies first, then its explicit fields. So a config file's `beta`
    /// beats the file's own `preset`, and any CLI value beats the file.
    pub fn merged_with(&self, overrides: &Options) -> Options {
        let mut out = self.clone();
        if let Some(preset) = overrides.preset {
            let (beta, lambda) = preset.beta_lambda();
            out.preset = Some(preset);
            out.beta = Some(beta);
            out.lambda = Some(lambda);
        }
        take_if_set!(
            out,
            overrides,
            [
                input, output, data, reference, mask, mask_from_box, telemetry, beta, lambda,
                step, outer, grad_steps, area_floor, sigma_factor, seed, skip_init, init_step,
                init_iters, iters,
            ]
        );
        out
    }

    /// Key/value rendering of every set field, for provenance echoes.
    pub fn effective_entries(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut push = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                out.push((key.to_owned(), v));
            }
        };
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        push("input", path(&self.input));
        push("output", path(&self.output));
        push("data", path(&self.data));
        push("reference", path(&self.reference));
        push("mask", path(&self.mask));
        push(
            "mask-from-box",
            self.mask_from_box
                .map(|b| b.iter().map(f64::to_string).collect::<Vec<_>>().join(",")),
        );
        push("telemetry", path(&self.telemetry));
        push("preset", self.preset.map(|p| p.name().to_owned()));
        push("beta", self.beta.map(|v| v.to_string()));
        push("lambda", self.lambda.map(|v| v.to_string()));
        push("step", self.step.map(|v| v.to_string()));
        push("outer", self.outer.map(|v| v.to_string()));
        push("grad-steps", self.grad_steps.map(|v| v.to_string()));
        push("area-floor", self.area_floor.map(|v| v.to_string()));
        push("sigma-factor", self.sigma_factor.map(|v| v.to_string()));
        push("seed", self.seed.map(|v| v.to_string()));
        push("skip-init", self.skip_init.map(|v| v.to_string()));
        push("init-step", self.init_step.map(|v| v.to_string()));
        push("init-iters", self.init_iters.map(|v| v.to_string()));
        push("iters", self.iters.map(|v| v.to_string()));
        out
    }
}

/// Parses a `key = value` config file. Keys match the long CLI flags;
/// `#` starts a comment.
pub fn load_options(path: &Path) -> Result<Options> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut options = Options::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(path, line_no, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        set_key(&mut options, key, value)
            .map_err(|message| parse_err(path, line_no, message))?;
    }
    Ok(options)
}

fn set_key(options: &mut Options, key: &str, value: &str) -> std::result::Result<(), String> {
    fn num<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
        value.parse().map_err(|_| format!("bad value `{value}` for `{key}`"))
    }
    match key {
        "input" => options.input = Some(PathBuf::from(value)),
        "output" => options.output = Some(PathBuf::from(value)),
        "data" => options.data = Some(PathBuf::from(value)),
        "reference" => options.reference = Some(PathBuf::from(value)),
        "mask" => options.mask = Some(PathBuf::from(value)),
        "mask-from-box" => {
            options.mask_from_box = Some(parse_box(value).map_err(|e| e.to_string())?)
        }
        "telemetry" => options.telemetry = Some(PathBuf::from(value)),
        "beta" => options.beta = Some(num(key, value)?),
        "lambda" => options.lambda = Some(num(key, value)?),
        "step" => options.step = Some(num(key, value)?),
        "outer" => options.outer = Some(num(key, value)?),
        "grad-steps" => options.grad_steps = Some(num(key, value)?),
        "area-floor" => options.area_floor = Some(num(key, value)?),
        "sigma-factor" => options.sigma_factor = Some(num(key, value)?),
        "seed" => options.seed = Some(num(key, value)?),
        "preset" => options.preset = Some(Preset::parse(value).map_err(|e| e.to_string())?),
        "skip-init" => options.skip_init = Some(num(key, value)?),
        "init-step" => options.init_step = Some(num(key, value)?),
        "init-iters" => options.init_iters = Some(num(key, value)?),
        "iters" => options.iters = Some(num(key, value)?),
        other => return Err(format!("unknown key `{other}`")),
    }
    Ok(())
}

/// Parses `xmin,ymin,zmin,xmax,ymax,zmax`.
pub fn parse_box(text: &str) -> Result<[f64; 6]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(Error::InvalidArguments(format!(
            "box needs 6 comma-separated numbers, got {}",
            parts.len()
        )));
    }
    let mut bounds = [0.0f64; 6];
    for (slot, part) in bounds.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| Error::InvalidArguments(format!("bad box coordinate `{part}`")))?;
    }
    for axis in 0..3 {
        if bounds[axis] > bounds[axis + 3] {
            return Err(Error::InvalidArguments(
                "box minimum exceeds maximum".to_owned(),
            ));
        }
    }
    Ok(bounds)
}
