//! Lines joining `x` on the horizontal axis to `1/x` on the vertical axis
//! all pass through one point.

use softnum::geometry::{horizontal_axis_point, reciprocal_line_intersection, vertical_axis_point, ABSOLUTE_ZERO};

fn main() -> Result<(), softnum::geometry::GeometryError> {
    let xs = [0.1, 0.25, 0.5, 2.0, 3.0, 10.0];
    for &x in &xs {
        let h = horizontal_axis_point(x);
        let v = vertical_axis_point(1.0 / x);
        println!("x = {x:<5} H = ({:>5}, {:>3})  V = ({:>3}, {:>5})", h.x, h.y, v.x, v.y);
    }
    println!();
    for w in xs.windows(2) {
        let p = reciprocal_line_intersection(w[0], w[1])?;
        println!("lines at {} and {} meet at ({:.12}, {:.12})", w[0], w[1], p.x, p.y);
    }
    println!("absolute zero: ({}, {})", ABSOLUTE_ZERO.x, ABSOLUTE_ZERO.y);
    Ok(())
}
