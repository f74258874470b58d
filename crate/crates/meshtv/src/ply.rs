//! Binary little-endian PLY reading and writing.
//!
//! The writer emits float64 vertex coordinates and `uchar`-counted `uint`
//! face index lists, so geometry round-trips exactly. The reader accepts any
//! scalar type for the coordinate properties, skips extra vertex properties,
//! and requires a single `vertex_indices` (or `vertex_index`) list on faces.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use meshtv_core::{TriangleMesh, Vec3};

use crate::error::{io_err, parse_err, Error, Result};

#[derive(Clone, Copy, PartialEq, Debug)]
enum Scalar {
    I8,
    U8,
    I16,
    U16,
    I32,
    U32,
    F32,
    F64,
}

impl Scalar {
    fn parse(name: &str) -> Option<Scalar> {
        Some(match name {
            "char" | "int8" => Scalar::I8,
            "uchar" | "uint8" => Scalar::U8,
            "short" | "int16" => Scalar::I16,
            "ushort" | "uint16" => Scalar::U16,
            "int" | "int32" => Scalar::I32,
            "uint" | "uint32" => Scalar::U32,
            "float" | "float32" => Scalar::F32,
            "double" | "float64" => Scalar::F64,
            _ => return None,
        })
    }

    fn read<R: Read>(self, reader: &mut R) -> std::io::Result<f64> {
        let mut buf = [0u8; 8];
        Ok(match self {
            Scalar::I8 => {
                reader.read_exact(&mut buf[..1])?;
                buf[0] as i8 as f64
            }
            Scalar::U8 => {
                reader.read_exact(&mut buf[..1])?;
                buf[0] as f64
            }
            Scalar::I16 => {
                reader.read_exact(&mut buf[..2])?;
                i16::from_le_bytes([buf[0], buf[1]]) as f64
            }
            Scalar::U16 => {
                reader.read_exact(&mut buf[..2])?;
                u16::from_le_bytes([buf[0], buf[1]]) as f64
            }
            Scalar::I32 => {
                reader.read_exact(&mut buf[..4])?;
                i32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]) as f64
            }
            Scalar::U32 => {
                reader.read_exact(&mut buf[..4])?;
                u32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]) as f64
            }
            Scalar::F32 => {
                reader.read_exact(&mut buf[..4])?;
                f32::from_le_bytes([buf[0], buf[1], buf[2], buf[3]]) as f64
            }
            Scalar::F64 => {
                reader.read_exact(&mut buf)?;
                f64::from_le_bytes(buf)
            }
        })
    }
}

struct VertexLayout {
    properties: Vec<(String, Scalar)>,
}

impl VertexLayout {
    fn position_of(&self, name: &str) -> Option<usize> {
        self.properties.iter().position(|(n, _)| n == name)
    }
}

pub fn load_ply(path: &Path) -> Result<TriangleMesh> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_ply(BufReader::new(file), path)
}

pub fn read_ply<R: Read>(mut reader: BufReader<R>, path: &Path) -> Result<TriangleMesh> {
    let mut line = String::new();
    let mut line_no = 0usize;
    let mut next_line = |reader: &mut BufReader<R>, line: &mut String| -> Result<String> {
        line.clear();
        line_no += 1;
        let n = reader.read_line(line).map_err(|e| io_err(path, e))?;
        if n == 0 {
            return Err(parse_err(path, line_no, "unexpected end of header"));
        }
        Ok(line.trim().to_owned())
    };

    if next_line(&mut reader, &mut line)? != "ply" {
        return Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
            message: "missing `ply` magic".into(),
        });
    }

    let mut format_seen = false;
    let mut vertex_count = 0usize;
    let mut face_count = 0usize;
    let mut vertex_layout = VertexLayout { properties: Vec::new() };
    let mut face_list: Option<(Scalar, Scalar)> = None;
    // Which element block the property lines we read belong to.
    enum Block {
        None,
        Vertex,
        Face,
    }
    let mut block = Block::None;

    loop {
        let text = next_line(&mut reader, &mut line)?;
        let mut tokens = text.split_whitespace();
        match tokens.next() {
            Some("comment") | Some("obj_info") => {}
            Some("format") => {
                let kind = tokens.next().unwrap_or("");
                if kind != "binary_little_endian" {
                    return Err(Error::UnsupportedFormat {
                        path: path.to_path_buf(),
                        message: format!("only binary_little_endian is supported, got `{kind}`"),
                    });
                }
                format_seen = true;
            }
            Some("element") => {
                let name = tokens.next().unwrap_or("");
                let count: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(path, 0, "bad element count"))?;
                block = match name {
                    "vertex" => {
                        vertex_count = count;
                        Block::Vertex
                    }
                    "face" => {
                        face_count = count;
                        Block::Face
                    }
                    other => {
                        return Err(Error::UnsupportedFormat {
                            path: path.to_path_buf(),
                            message: format!("unsupported element `{other}`"),
                        })
                    }
                };
            }
            Some("property") => {
                let first = tokens.next().unwrap_or("");
                match block {
                    Block::Vertex => {
                        let scalar = Scalar::parse(first).ok_or_else(|| {
                            parse_err(path, 0, format!("unsupported vertex property type `{first}`"))
                        })?;
                        let name = tokens.next().unwrap_or("").to_owned();
                        vertex_layout.properties.push((name, scalar));
                    }
                    Block::Face => {
                        if first != "list" {
                            return Err(Error::UnsupportedFormat {
                                path: path.to_path_buf(),
                                message: "face elements need a single list property".into(),
                            });
                        }
                        let count_type = Scalar::parse(tokens.next().unwrap_or(""))
                            .ok_or_else(|| parse_err(path, 0, "bad list count type"))?;
                        let index_type = Scalar::parse(tokens.next().unwrap_or(""))
                            .ok_or_else(|| parse_err(path, 0, "bad list index type"))?;
                        let name = tokens.next().unwrap_or("");
                        if name != "vertex_indices" && name != "vertex_index" {
                            return Err(Error::UnsupportedFormat {
                                path: path.to_path_buf(),
                                message: format!("unsupported face property `{name}`"),
                            });
                        }
                        face_list = Some((count_type, index_type));
                    }
                    Block::None => {
                        return Err(parse_err(path, 0, "property before any element"));
                    }
                }
            }
            Some("end_header") => break,
            Some(other) => {
                return Err(parse_err(path, 0, format!("unexpected header line `{other}`")));
            }
            None => {}
        }
    }

    if !format_seen {
        return Err(parse_err(path, 0, "header has no format line"));
    }
    let (x, y, z) = match (
        vertex_layout.position_of("x"),
        vertex_layout.position_of("y"),
        vertex_layout.position_of("z"),
    ) {
        (Some(x), Some(y), Some(z)) => (x, y, z),
        _ => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                message: "vertex element must carry x, y, z properties".into(),
            })
        }
    };
    let (count_type, index_type) = face_list.ok_or_else(|| Error::UnsupportedFormat {
        path: path.to_path_buf(),
        message: "face element must carry a vertex_indices list".into(),
    })?;

    let mut vertices = Vec::with_capacity(vertex_count);
    let mut scratch = vec![0.0f64; vertex_layout.properties.len()];
    for _ in 0..vertex_count {
        for (slot, (_, scalar)) in scratch.iter_mut().zip(&vertex_layout.properties) {
            *slot = scalar.read(&mut reader).map_err(|e| io_err(path, e))?;
        }
        vertices.push(Vec3::new(scratch[x], scratch[y], scratch[z]));
    }

    let mut triangles = Vec::with_capacity(face_count);
    for _ in 0..face_count {
        let n = count_type.read(&mut reader).map_err(|e| io_err(path, e))? as usize;
        if n < 3 {
            return Err(parse_err(path, 0, format!("face with {n} vertices")));
        }
        let mut face = Vec::with_capacity(n);
        for _ in 0..n {
            face.push(index_type.read(&mut reader).map_err(|e| io_err(path, e))? as usize);
        }
        for i in 1..n - 1 {
            triangles.push([face[0], face[i], face[i + 1]]);
        }
    }

    TriangleMesh::new(vertices, triangles)
        .map_err(|source| Error::InvalidMesh { path: path.to_path_buf(), source })
}

pub fn save_ply(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut writer = BufWriter::new(file);
    write_ply(mesh, &mut writer).map_err(|e| io_err(path, e))
}

pub fn write_ply<W: Write>(mesh: &TriangleMesh, writer: &mut W) -> std::io::Result<()> {
    write!(
        writer,
        "ply\nformat binary_little_endian 1.0\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\nelement face {}\nproperty list uchar uint vertex_indices\nend_header\n",
        mesh.vertex_count(),
        mesh.triangle_count()
    )?;
    for v in mesh.vertices() {
        writer.write_all(&v.x.to_le_bytes())?;
        writer.write_all(&v.y.to_le_bytes())?;
        writer.write_all(&v.z.to_le_bytes())?;
    }
    for t in mesh.triangles() {
        writer.write_all(&[3u8])?;
        for &i in t {
            writer.write_all(&(i as u32).to_le_bytes())?;
        }
    }
    writer.flush()
}
