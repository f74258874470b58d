//! Writes the subdivided unit-cube benchmark mesh used by the experiment
//! walkthrough in the README.
//!
//! ```text
//! cargo run -p meshtv --example benchmark_cube -- cube.obj 10
//! ```

use meshtv::io::save_mesh;
use meshtv_core::primitives::unit_cube;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "cube.obj".to_owned());
    let n: usize = args
        .next()
        .map(|s| s.parse().expect("subdivision count must be a positive integer"))
        .unwrap_or(10);
    let cube = unit_cube(n);
    save_mesh(&cube, &path, None).expect("write mesh");
    println!(
        "wrote {path}: {} vertices, {} triangles",
        cube.vertex_count(),
        cube.triangle_count()
    );
}
