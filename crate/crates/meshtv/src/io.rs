//! Format dispatch for mesh files.

use std::path::Path;

use meshtv_core::TriangleMesh;

use crate::error::{Error, Result};
use crate::{obj, ply};

/// Supported mesh file formats. ASCII OBJ is canonical; binary
/// little-endian PLY is the compact alternative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    /// Picks the format from a file extension (case-insensitive).
    pub fn from_path(path: &Path) -> Result<MeshFormat> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("obj") => Ok(MeshFormat::Obj),
            Some("ply") => Ok(MeshFormat::Ply),
            _ => Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                message: "unknown extension; expected .obj or .ply".into(),
            }),
        }
    }
}

/// Loads a mesh, inferring the format from the extension unless given.
pub fn load_mesh(path: impl AsRef<Path>, format: Option<MeshFormat>) -> Result<TriangleMesh> {
    let path = path.as_ref();
    match format.map_or_else(|| MeshFormat::from_path(path), Ok)? {
        MeshFormat::Obj => obj::load_obj(path),
        MeshFormat::Ply => ply::load_ply(path),
    }
}

/// Saves a mesh, inferring the format from the extension unless given.
pub fn save_mesh(
    mesh: &TriangleMesh,
    path: impl AsRef<Path>,
    format: Option<MeshFormat>,
) -> Result<()> {
    let path = path.as_ref();
    match format.map_or_else(|| MeshFormat::from_path(path), Ok)? {
        MeshFormat::Obj => obj::save_obj(mesh, path),
        MeshFormat::Ply => ply::save_ply(mesh, path),
    }
}
