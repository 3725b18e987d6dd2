//! The Soft Number Strip (SNS) and its Möbius-strip embedding.
//!
//! A point on the strip has a signed height `A` and a signed width
//! `B ∈ [−1, 1]`. It corresponds to the soft number `x0̄ ∔ y` with
//! `x = (1 − |B|)A` and `y = BA`. Bending the strip of height
//! `2πR` around a circle of radius `R`, with a half twist, gives the
//! Möbius strip.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("width B = {0} lies outside [-1, 1]")]
    WidthOutOfRange(f64),
    #[error("reciprocal of zero")]
    ZeroInput,
    #[error("lines through x1 = {x1} and x2 = {x2} do not meet in a single point")]
    ParallelLines { x1: f64, x2: f64 },
    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("radius R = {0} must be a finite number > 1")]
    InvalidRadius(f64),
    #[error("resolution {0}x{1} must be at least 2x2")]
    InvalidResolution(usize, usize),
    #[error("unknown surface '{0}': expected sns, cartesian or mobius")]
    UnknownSurface(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// Relative slack on interval bounds, absorbing the rounding in `φR`.
const BOUND_SLACK: f64 = 1e-12;

/// A point `(A, B)` on the strip: signed height and signed width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnsPoint {
    pub height: f64,
    pub width: f64,
}

impl SnsPoint {
    pub fn new(height: f64, width: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&width) {
            return Err(GeometryError::WidthOutOfRange(width));
        }
        Ok(SnsPoint { height, width })
    }
}

/// A point of the soft-number Cartesian plane: `x` is the coefficient of
/// `0̄`, `y` the real coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

/// `x = (1 − |B|)A`, `y = BA`.
pub fn ab_to_xy(p: SnsPoint) -> Result<PlanePoint> {
    let SnsPoint { height: a, width: b } = p;
    if !(-1.0..=1.0).contains(&b) {
        return Err(GeometryError::WidthOutOfRange(b));
    }
    Ok(PlanePoint {
        x: (1.0 - b.abs()) * a,
        y: b * a,
    })
}

/// `A = (|x| + |y|)·sign(x)`, `B = y·sign(x) / (|x| + |y|)`.
///
/// On the real axis (`x = 0`) the sign is taken as `+1`: positive reals
/// land on the right boundary `(A, B) = (y, 1)` and negative reals on the
/// left boundary `(−y, −1)`. The origin maps to `(0, 0)`.
pub fn xy_to_ab(q: PlanePoint) -> SnsPoint {
    let PlanePoint { x, y } = q;
    let norm = x.abs() + y.abs();
    if norm == 0.0 {
        return SnsPoint {
            height: 0.0,
            width: 0.0,
        };
    }
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    SnsPoint {
        height: norm * sign,
        width: (y * sign / norm).clamp(-1.0, 1.0),
    }
}

/// `x ↦ 1/x`, a bijection from `(0, 1]` onto `[1, ∞)`.
pub fn reciprocal(x: f64) -> Result<f64> {
    if x == 0.0 {
        Err(GeometryError::ZeroInput)
    } else {
        Ok(x.recip())
    }
}

/// Planar point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Where the value `x` sits on the horizontal half-axis. The junction
/// between the two axes (the value 1) is the origin.
pub fn horizontal_axis_point(x: f64) -> Point2 {
    Point2 { x: x - 1.0, y: 0.0 }
}

/// Where the value `v ≥ 1` sits on the vertical half-axis.
pub fn vertical_axis_point(v: f64) -> Point2 {
    Point2 { x: 0.0, y: v - 1.0 }
}

/// The absolute zero, one unit below the zero of the horizontal axis.
pub const ABSOLUTE_ZERO: Point2 = Point2 { x: -1.0, y: -1.0 };

/// Intersects the line joining `x1` to `1/x1` with the line joining `x2`
/// to `1/x2`. Every such pair meets at [`ABSOLUTE_ZERO`].
pub fn reciprocal_line_intersection(x1: f64, x2: f64) -> Result<Point2> {
    let valid = |x: f64| x.is_finite() && x > 0.0 && x != 1.0;
    if !(valid(x1) && valid(x2)) || x1 == x2 {
        return Err(GeometryError::ParallelLines { x1, x2 });
    }
    // line k through P = H(xk) and Q = V(1/xk); Q sits on the vertical
    // axis, so the line is y = mk·x + ck with ck = Q.y
    let line = |x: f64| {
        let p = horizontal_axis_point(x);
        let q = vertical_axis_point(x.recip());
        ((q.y - p.y) / (q.x - p.x), q.y)
    };
    let (m1, c1) = line(x1);
    let (m2, c2) = line(x2);
    let dm = m1 - m2;
    if dm.abs() <= 1e-14 * m1.abs().max(m2.abs()) {
        return Err(GeometryError::ParallelLines { x1, x2 });
    }
    let x = (c2 - c1) / dm;
    Ok(Point2 { x, y: m1 * x + c1 })
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 1.0 {
        Ok(())
    } else {
        Err(GeometryError::InvalidRadius(r))
    }
}

fn check_bound(what: &'static str, value: f64, max: f64) -> Result<()> {
    if value.abs() <= max * (1.0 + BOUND_SLACK) {
        Ok(())
    } else {
        Err(GeometryError::OutOfRange {
            what,
            value,
            min: -max,
            max,
        })
    }
}

/// Bending angle for the arc length `A`: `φ = A/R ∈ [−π, π]`.
pub fn phi_from_a(a: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    check_bound("A", a, PI * r)?;
    Ok((a / r).clamp(-PI, PI))
}

/// Arc length for the bending angle: `A = φR ∈ [−πR, πR]`.
pub fn a_from_phi(phi: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    check_bound("phi", phi, PI)?;
    Ok(phi * r)
}

/// A vertex of the embedded strip plus its quadrant color code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusVertex {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub color: f64,
}

/// ```text
/// X = (R + B cos(φ/2)) cos φ
/// Y = (R + B cos(φ/2)) sin φ
/// Z = B sin(φ/2)
/// ```
///
/// `color` is left at 0; see [`color_code`].
pub fn mobius_point(phi: f64, width: f64, r: f64) -> Result<MobiusVertex> {
    check_radius(r)?;
    check_bound("phi", phi, PI)?;
    if !(-1.0..=1.0).contains(&width) {
        return Err(GeometryError::WidthOutOfRange(width));
    }
    let (s, c) = (phi / 2.0).sin_cos();
    let ring = r + width * c;
    Ok(MobiusVertex {
        x: ring * phi.cos(),
        y: ring * phi.sin(),
        z: width * s,
        color: 0.0,
    })
}

pub const COLOR_RED: f64 = 1.0;
pub const COLOR_YELLOW: f64 = 0.7;
pub const COLOR_GREEN: f64 = 0.5;
pub const COLOR_BLUE: f64 = 0.0;

/// Quadrant code of `(A, B)`. Points on either axis fall to blue.
pub fn color_code(a: f64, b: f64) -> f64 {
    match (a < 0.0, a > 0.0, b < 0.0, b > 0.0) {
        (true, _, _, true) => COLOR_RED,
        (_, true, _, true) => COLOR_YELLOW,
        (true, _, true, _) => COLOR_GREEN,
        _ => COLOR_BLUE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    /// The strip itself, positioned at `(B, A)`.
    Sns,
    /// The soft-number plane, positioned at `(x, y)`.
    Cartesian,
    /// The embedded Möbius strip.
    Mobius,
}

impl Surface {
    pub fn name(self) -> &'static str {
        match self {
            Surface::Sns => "sns",
            Surface::Cartesian => "cartesian",
            Surface::Mobius => "mobius",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Surface {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sns" => Ok(Surface::Sns),
            "cartesian" => Ok(Surface::Cartesian),
            "mobius" => Ok(Surface::Mobius),
            _ => Err(GeometryError::UnknownSurface(s.to_string())),
        }
    }
}

/// `n` evenly spaced values from `lo` to `hi`, both endpoints exact.
///
/// Written as `lo + (hi − lo)·(i / (n − 1))` so a symmetric range with odd
/// `n` hits 0 exactly in the middle.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

/// Everything known about one grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshVertex {
    /// Row (φ index).
    pub i: usize,
    /// Column (B index).
    pub j: usize,
    pub phi: f64,
    pub sns: SnsPoint,
    pub plane: PlanePoint,
    pub mobius: MobiusVertex,
    pub color: f64,
}

impl MeshVertex {
    /// 3D position of this vertex on `surface`. The flat surfaces sit in
    /// the `z = 0` plane.
    pub fn position(&self, surface: Surface) -> [f64; 3] {
        match surface {
            Surface::Sns => [self.sns.width, self.sns.height, 0.0],
            Surface::Cartesian => [self.plane.x, self.plane.y, 0.0],
            Surface::Mobius => [self.mobius.x, self.mobius.y, self.mobius.z],
        }
    }
}

/// A row-major `n_phi × n_b` grid of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub surface: Surface,
    pub radius: f64,
    pub n_phi: usize,
    pub n_b: usize,
    pub vertices: Vec<MeshVertex>,
}

impl Mesh {
    pub fn vertex(&self, i: usize, j: usize) -> &MeshVertex {
        &self.vertices[i * self.n_b + j]
    }

    pub fn position(&self, i: usize, j: usize) -> [f64; 3] {
        self.vertex(i, j).position(self.surface)
    }

    /// Two triangles per grid cell as zero-based vertex indices.
    ///
    /// With `j` growing along +X and `i` along +Y near `φ = 0`, the
    /// triangles wind counterclockwise seen from +Z.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n_b = self.n_b;
        (0..self.n_phi.saturating_sub(1)).flat_map(move |i| {
            (0..n_b - 1).flat_map(move |j| {
                let v00 = i * n_b + j;
                let v01 = v00 + 1;
                let v10 = v00 + n_b;
                let v11 = v10 + 1;
                [[v00, v01, v11], [v00, v11, v10]]
            })
        })
    }
}

/// Samples the strip on a uniform `(φ, B)` grid over `[−π, π] × [−1, 1]`.
///
/// Row `i` carries `φ_i` and `A_i = φ_i·R`; column `j` carries `B_j`.
/// Each vertex records its strip, plane and Möbius coordinates together
/// with the quadrant color of `(A_i, B_j)`; `surface` selects which of the
/// three is its position.
pub fn generate_mesh(surface: Surface, r: f64, n_phi: usize, n_b: usize) -> Result<Mesh> {
    check_radius(r)?;
    if n_phi < 2 || n_b < 2 {
        return Err(GeometryError::InvalidResolution(n_phi, n_b));
    }
    let phis = linspace(-PI, PI, n_phi);
    let widths = linspace(-1.0, 1.0, n_b);
    let mut vertices = Vec::with_capacity(n_phi * n_b);
    for (i, &phi) in phis.iter().enumerate() {
        let height = phi * r;
        for (j, &width) in widths.iter().enumerate() {
            let sns = SnsPoint { height, width };
            let color = color_code(height, width);
            let mut mobius = mobius_point(phi, width, r)?;
            mobius.color = color;
            vertices.push(MeshVertex {
                i,
                j,
                phi,
                sns,
                plane: ab_to_xy(sns)?,
                mobius,
                color,
            });
        }
    }
    Ok(Mesh {
        surface,
        radius: r,
        n_phi,
        n_b,
        vertices,
    })
}
