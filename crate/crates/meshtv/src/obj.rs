//! Wavefront OBJ reading and writing.
//!
//! The reader honors `v` and `f` records, skips texture/normal/material
//! statements, resolves negative (relative) indices, and fan-triangulates
//! polygon faces from their first vertex. The writer emits 17 significant
//! digits per coordinate, so `load(save(mesh))` reproduces every vertex
//! bit-for-bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use meshtv_core::{TriangleMesh, Vec3};

use crate::error::{io_err, parse_err, Error, Result};

pub fn load_obj(path: &Path) -> Result<TriangleMesh> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_obj(BufReader::new(file), path)
}

pub fn read_obj<R: Read>(reader: BufReader<R>, path: &Path) -> Result<TriangleMesh> {
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| io_err(path, e))?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut coords = [0.0f64; 3];
                for c in &mut coords {
                    let token = tokens
                        .next()
                        .ok_or_else(|| parse_err(path, line_no, "vertex needs 3 coordinates"))?;
                    *c = token.parse().map_err(|_| {
                        parse_err(path, line_no, format!("bad coordinate `{token}`"))
                    })?;
                }
                // An optional w component is allowed and ignored.
                vertices.push(Vec3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let mut face: Vec<usize> = Vec::new();
                for token in tokens {
                    let index_token = token.split('/').next().unwrap_or("");
                    let raw: i64 = index_token.parse().map_err(|_| {
                        parse_err(path, line_no, format!("bad face index `{token}`"))
                    })?;
                    let resolved = if raw > 0 {
                        raw as usize - 1
                    } else if raw < 0 {
                        let back = vertices.len() as i64 + raw;
                        if back < 0 {
                            return Err(parse_err(
                                path,
                                line_no,
                                format!("relative index `{raw}` before first vertex"),
                            ));
                        }
                        back as usize
                    } else {
                        return Err(parse_err(path, line_no, "face index 0 is invalid"));
                    };
                    face.push(resolved);
                }
                if face.len() < 3 {
                    return Err(parse_err(path, line_no, "face needs at least 3 vertices"));
                }
                // Deterministic fan triangulation from the first vertex.
                for i in 1..face.len() - 1 {
                    triangles.push([face[0], face[i], face[i + 1]]);
                }
            }
            // Normals, texture coordinates, grouping and material statements
            // carry nothing we model.
            _ => {}
        }
    }
    TriangleMesh::new(vertices, triangles)
        .map_err(|source| Error::InvalidMesh { path: path.to_path_buf(), source })
}

pub fn save_obj(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut writer = BufWriter::new(file);
    write_obj(mesh, &mut writer).map_err(|e| io_err(path, e))
}

pub fn write_obj<W: Write>(mesh: &TriangleMesh, writer: &mut W) -> std::io::Result<()> {
    for v in mesh.vertices() {
        // 17 significant digits: enough to reproduce any f64 exactly.
        writeln!(writer, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z)?;
    }
    for t in mesh.triangles() {
        writeln!(writer, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    writer.flush()
}
