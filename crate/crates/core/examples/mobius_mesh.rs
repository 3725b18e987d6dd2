//! Bend the strip into a Möbius band and export it.
//!
//! ```text
//! cargo run --release --example mobius_mesh -- out_dir
//! ```

use std::path::PathBuf;

use softnum::export::{export_mesh, MeshFormat};
use softnum::geometry::{generate_mesh, mobius_point, Surface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let r = 10.0;

    // the seam: (π, B) and (−π, −B) are the same point
    let p = mobius_point(std::f64::consts::PI, 0.6, r)?;
    let q = mobius_point(-std::f64::consts::PI, -0.6, r)?;
    println!("seam: ({:.6}, {:.6}, {:.6}) vs ({:.6}, {:.6}, {:.6})", p.x, p.y, p.z, q.x, q.y, q.z);

    for surface in [Surface::Sns, Surface::Cartesian, Surface::Mobius] {
        let mesh = generate_mesh(surface, r, 120, 40)?;
        for format in [MeshFormat::Csv, MeshFormat::Obj] {
            let out = dir.join(format!("{surface}.{}", format.extension()));
            let manifest = export_mesh(&mesh, format, &out)?;
            println!("{} {} vertices sha256 {}", out.display(), manifest.vertex_count, manifest.checksum);
        }
    }
    Ok(())
}
