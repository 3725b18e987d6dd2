//! Moving between the strip coordinates `(A, B)` and the soft-number
//! plane `(x, y)`.

use softnum::geometry::{ab_to_xy, xy_to_ab, PlanePoint, SnsPoint};

fn main() -> Result<(), softnum::geometry::GeometryError> {
    for (a, b) in [(2.0, 0.5), (-3.0, -0.25), (5.0, 1.0), (4.0, 0.0)] {
        let q = ab_to_xy(SnsPoint::new(a, b)?)?;
        let back = xy_to_ab(q);
        println!(
            "(A, B) = ({a:>4}, {b:>5})  ->  (x, y) = ({:>6}, {:>6})  ->  ({}, {})   |x|+|y| = {}",
            q.x,
            q.y,
            back.height,
            back.width,
            q.x.abs() + q.y.abs()
        );
    }

    // points on the real axis and the origin
    for (x, y) in [(0.0, 3.0), (0.0, -3.0), (0.0, 0.0)] {
        let p = xy_to_ab(PlanePoint { x, y });
        println!("(x, y) = ({x}, {y})  ->  (A, B) = ({}, {})", p.height, p.width);
    }
    Ok(())
}
