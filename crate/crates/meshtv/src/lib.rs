//! File formats, configuration, and the command-line pipeline around
//! [`meshtv_core`].
//!
//! This crate carries everything that needs an operating system: OBJ and
//! binary PLY readers/writers, vertex-mask files, `key = value` run
//! configuration, CSV solver telemetry, and the `meshtv` binary with the
//! subcommands `add-noise`, `denoise`, `inpaint`, `tv`, `min-surface` and
//! `metrics`.

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod mask;
pub mod obj;
pub mod ply;
pub mod telemetry;

pub use error::{Error, Result};
pub use io::{load_mesh, save_mesh, MeshFormat};
pub use meshtv_core::{EdgeFrame, TriangleMesh, Vec3};
