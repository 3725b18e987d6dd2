//! Mesh files and their JSON manifests.
//!
//! CSV rows follow the header [`CSV_HEADER`], one row per vertex in
//! row-major order. Floats are written with 17 significant digits so that
//! reading them back gives the same `f64` bits. OBJ output writes vertex
//! colors as `v X Y Z r g b` and splits every grid cell into two
//! triangles.
//!
//! Every writer streams through SHA-256, and the digest of the exact bytes
//! written lands in `<out>.manifest.json`.

use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geometry::{self, GeometryError, Mesh, Surface};

pub const CSV_HEADER: &str = "i,j,phi,A,B,x,y,X,Y,Z,color";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("malformed mesh CSV at line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unknown format '{0}': expected csv or obj")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MeshFormat {
    Csv,
    Obj,
}

impl MeshFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MeshFormat::Csv => "csv",
            MeshFormat::Obj => "obj",
        }
    }
}

impl FromStr for MeshFormat {
    type Err = ExportError;

    fn from_str(s: &str) -> Result<Self, ExportError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(MeshFormat::Csv),
            "obj" => Ok(MeshFormat::Obj),
            _ => Err(ExportError::UnknownFormat(s.to_string())),
        }
    }
}

/// Sidecar describing one exported mesh file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeshFileManifest {
    pub surface: Surface,
    #[serde(rename = "R")]
    pub radius: f64,
    pub resolution: (usize, usize),
    pub vertex_count: usize,
    pub format: MeshFormat,
    /// Hex SHA-256 of the mesh file bytes.
    pub checksum: String,
}

/// 17 significant digits: enough to round-trip any `f64`.
fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Piecewise-linear jet-like colormap for a code in `[0, 1]`.
pub fn jet_rgb(code: f64) -> [f64; 3] {
    let ch = |offset: f64| (1.5 - (4.0 * code - offset).abs()).clamp(0.0, 1.0);
    [ch(3.0), ch(2.0), ch(1.0)]
}

pub fn write_csv<W: Write>(mesh: &Mesh, mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for v in &mesh.vertices {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            v.i,
            v.j,
            float(v.phi),
            float(v.sns.height),
            float(v.sns.width),
            float(v.plane.x),
            float(v.plane.y),
            float(v.mobius.x),
            float(v.mobius.y),
            float(v.mobius.z),
            float(v.color),
        )?;
    }
    w.flush()
}

pub fn write_obj<W: Write>(mesh: &Mesh, mut w: W) -> io::Result<()> {
    writeln!(
        w,
        "# soft-number {} surface, R = {}, {}x{} grid",
        mesh.surface, mesh.radius, mesh.n_phi, mesh.n_b
    )?;
    for v in &mesh.vertices {
        let [x, y, z] = v.position(mesh.surface);
        let [r, g, b] = jet_rgb(v.color);
        writeln!(w, "v {} {} {} {r:.6} {g:.6} {b:.6}", float(x), float(y), float(z))?;
    }
    for [a, b, c] in mesh.triangles() {
        writeln!(w, "f {} {} {}", a + 1, b + 1, c + 1)?;
    }
    w.flush()
}

/// Forwards writes while hashing them.
struct HashingWriter<W> {
    inner: W,
    hasher: Sha256,
}

impl<W: Write> Write for HashingWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes `mesh` in `format` to any sink and returns the manifest for the
/// bytes written.
pub fn write_mesh<W: Write>(mesh: &Mesh, format: MeshFormat, sink: W) -> io::Result<MeshFileManifest> {
    let mut w = HashingWriter {
        inner: sink,
        hasher: Sha256::new(),
    };
    match format {
        MeshFormat::Csv => write_csv(mesh, &mut w)?,
        MeshFormat::Obj => write_obj(mesh, &mut w)?,
    }
    Ok(MeshFileManifest {
        surface: mesh.surface,
        radius: mesh.radius,
        resolution: (mesh.n_phi, mesh.n_b),
        vertex_count: mesh.vertices.len(),
        format,
        checksum: hex::encode(w.hasher.finalize()),
    })
}

/// `<out>.manifest.json`
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ExportError + '_ {
    move |source| ExportError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the mesh file at `out` and its manifest next to it.
pub fn export_mesh(mesh: &Mesh, format: MeshFormat, out: &Path) -> Result<MeshFileManifest, ExportError> {
    let file = File::create(out).map_err(io_err(out))?;
    let manifest = write_mesh(mesh, format, BufWriter::new(file)).map_err(io_err(out))?;
    let side = manifest_path(out);
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    std::fs::write(&side, json).map_err(io_err(&side))?;
    Ok(manifest)
}

/// Hex SHA-256 of a file's contents.
pub fn file_checksum(path: &Path) -> Result<String, ExportError> {
    let mut f = File::open(path).map_err(io_err(path))?;
    let mut w = HashingWriter {
        inner: io::sink(),
        hasher: Sha256::new(),
    };
    io::copy(&mut f, &mut w).map_err(io_err(path))?;
    Ok(hex::encode(w.hasher.finalize()))
}

/// One parsed CSV data row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub i: usize,
    pub j: usize,
    pub phi: f64,
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub y: f64,
    pub big_x: f64,
    pub big_y: f64,
    pub big_z: f64,
    pub color: f64,
}

pub fn read_csv<R: BufRead>(reader: R) -> Result<Vec<CsvRow>, ExportError> {
    let mut lines = reader.lines();
    let malformed = |line: usize, message: String| ExportError::Malformed { line, message };
    let io = |e: io::Error| malformed(0, e.to_string());
    let header = lines.next().transpose().map_err(io)?;
    if header.as_deref() != Some(CSV_HEADER) {
        return Err(malformed(1, format!("header must be exactly '{CSV_HEADER}'")));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        let line = line.map_err(io)?;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(malformed(lineno, format!("expected 11 fields, found {}", fields.len())));
        }
        let int = |s: &str| s.parse::<usize>().map_err(|e| malformed(lineno, format!("'{s}': {e}")));
        let num = |s: &str| s.parse::<f64>().map_err(|e| malformed(lineno, format!("'{s}': {e}")));
        rows.push(CsvRow {
            i: int(fields[0])?,
            j: int(fields[1])?,
            phi: num(fields[2])?,
            a: num(fields[3])?,
            b: num(fields[4])?,
            x: num(fields[5])?,
            y: num(fields[6])?,
            big_x: num(fields[7])?,
            big_y: num(fields[8])?,
            big_z: num(fields[9])?,
            color: num(fields[10])?,
        });
    }
    Ok(rows)
}

/// Geometry invariants that a re-read CSV mesh must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvAudit {
    pub rows: usize,
    /// Rows violating any invariant, by data-row index.
    pub violations: Vec<(usize, String)>,
}

impl CsvAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Recomputes every derived column from `(phi, A, B)` and checks it,
/// along with the diamond bound `|x| + |y| ≤ πR` and the tube bound.
pub fn audit_csv(rows: &[CsvRow], radius: f64, n_phi: usize, n_b: usize) -> CsvAudit {
    use std::f64::consts::PI;
    let mut violations = Vec::new();
    if rows.len() != n_phi * n_b {
        violations.push((rows.len(), format!("expected {} rows, found {}", n_phi * n_b, rows.len())));
    }
    for (k, r) in rows.iter().enumerate() {
        let mut bad = |msg: String| violations.push((k, msg));
        if (r.i, r.j) != (k / n_b.max(1), k % n_b.max(1)) {
            bad(format!("out-of-order grid index ({}, {})", r.i, r.j));
        }
        if (r.a - r.phi * radius).abs() > 1e-12 * radius * PI {
            bad(format!("A = {} does not equal phi·R", r.a));
        }
        match geometry::SnsPoint::new(r.a, r.b).and_then(geometry::ab_to_xy) {
            Ok(p) if p.x == r.x && p.y == r.y => {}
            Ok(p) => bad(format!("(x, y) = ({}, {}) but (A, B) maps to ({}, {})", r.x, r.y, p.x, p.y)),
            Err(e) => bad(e.to_string()),
        }
        if r.x.abs() + r.y.abs() > PI * radius + 1e-9 {
            bad(format!("|x| + |y| = {} exceeds πR", r.x.abs() + r.y.abs()));
        }
        match geometry::mobius_point(r.phi, r.b, radius) {
            Ok(m) if m.x == r.big_x && m.y == r.big_y && m.z == r.big_z => {}
            Ok(_) => bad("Möbius coordinates do not match (phi, B)".to_string()),
            Err(e) => bad(e.to_string()),
        }
        if (r.big_x.hypot(r.big_y) - radius).abs() > 1.0 || r.big_z.abs() > 1.0 {
            bad("outside the tube of radius 1 around the core circle".to_string());
        }
        if r.color != geometry::color_code(r.a, r.b) {
            bad(format!("color {} does not match quadrant", r.color));
        }
    }
    CsvAudit {
        rows: rows.len(),
        violations,
    }
}
