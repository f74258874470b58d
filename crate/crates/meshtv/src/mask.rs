//! Vertex masks: which vertices the solver may move.
//!
//! The file format is one 0-based vertex index per line; blank lines and
//! lines starting with `#` are ignored. [`mask_from_box`] instead selects
//! the free set geometrically, which is how the inpainting experiments mark
//! a damaged region.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use meshtv_core::solver::VertexMask;
use meshtv_core::TriangleMesh;

use crate::error::{io_err, parse_err, Result};

/// Reads a free-vertex index file and validates it against `vertex_count`.
pub fn load_mask(path: &Path, vertex_count: usize) -> Result<VertexMask> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut free = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let index: usize = content
            .parse()
            .map_err(|_| parse_err(path, idx + 1, format!("bad vertex index `{content}`")))?;
        free.push(index);
    }
    Ok(VertexMask::from_free_indices(vertex_count, &free)?)
}

/// Writes a mask in the same format (`#`-comment header plus one index per
/// line).
pub fn save_mask(mask: &VertexMask, path: &Path) -> Result<()> {
    use std::io::Write;
    let mut file = File::create(path).map_err(|e| io_err(path, e))?;
    let body: String = mask.free_indices().map(|v| format!("{v}\n")).collect();
    file.write_all(b"# free vertex indices\n").map_err(|e| io_err(path, e))?;
    file.write_all(body.as_bytes()).map_err(|e| io_err(path, e))
}

/// Marks every vertex inside the closed box `[min, max]` as free.
pub fn mask_from_box(mesh: &TriangleMesh, bounds: [f64; 6]) -> VertexMask {
    let [x0, y0, z0, x1, y1, z1] = bounds;
    let free: Vec<usize> = mesh
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1 && p.z >= z0 && p.z <= z1
        })
        .map(|(v, _)| v)
        .collect();
    VertexMask::from_free_indices(mesh.vertex_count(), &free)
        .expect("indices come straight from the mesh")
}

#[cfg(test)]
mod tests {
    use super::*;
    use meshtv_core::primitives::unit_cube;

    #[test]
    fn mask_round_trips_through_a_file() {
        let dir = std::env::temp_dir().join("meshtv-mask-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("corner.mask");
        let mask = VertexMask::from_free_indices(10, &[1, 4, 7]).unwrap();
        save_mask(&mask, &path).unwrap();
        let back = load_mask(&path, 10).unwrap();
        assert_eq!(back, mask);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let dir = std::env::temp_dir().join("meshtv-mask-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("commented.mask");
        std::fs::write(&path, "# free set\n\n2\n 5 \n").unwrap();
        let mask = load_mask(&path, 8).unwrap();
        assert_eq!(mask.free_indices().collect::<Vec<_>>(), vec![2, 5]);
    }

    #[test]
    fn out_of_range_entries_are_rejected() {
        let dir = std::env::temp_dir().join("meshtv-mask-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.mask");
        std::fs::write(&path, "11\n").unwrap();
        assert!(load_mask(&path, 10).is_err());
    }

    #[test]
    fn box_selection_finds_the_corner_patch() {
        let cube = unit_cube(10);
        let mask = mask_from_box(&cube, [0.65, 0.65, 0.65, 1.1, 1.1, 1.1]);
        assert!(mask.free_count() > 0);
        for v in mask.free_indices() {
            let p = cube.vertices()[v];
            assert!(p.x >= 0.65 && p.y >= 0.65 && p.z >= 0.65);
        }
    }
}
