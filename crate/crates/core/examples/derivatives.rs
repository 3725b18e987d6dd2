//! Derivatives for free: lift `1z0 + x` through a function and read off
//! the soft part.

use softnum::prob::central_difference;
use softnum::{AnalyticFn, SoftNumber};

fn main() -> Result<(), softnum::SoftError> {
    let x = 0.7;
    let seed = SoftNumber::new(1.0, x)?;
    println!("{:<8} {:>20} {:>20}", "f", "soft part", "finite difference");
    for f in [
        AnalyticFn::Exp,
        AnalyticFn::Ln,
        AnalyticFn::Sin,
        AnalyticFn::Cos,
        AnalyticFn::Tan,
        AnalyticFn::Sqrt,
        AnalyticFn::Recip,
        AnalyticFn::PowReal(2.5),
    ] {
        let lifted = f.lift(seed)?;
        let fd = central_difference(|t| f.value(t), x);
        println!("{:<8} {:>20.15} {:>20.15}", f.name(), lifted.soft(), fd);
    }

    // d/dx sin(sqrt(x)), composed
    let nested = AnalyticFn::Sin.lift(AnalyticFn::Sqrt.lift(seed)?)?;
    println!("sin(sqrt(x)) at {x}: {nested}");
    println!("closed form:        {}", x.sqrt().cos() / (2.0 * x.sqrt()));
    Ok(())
}
