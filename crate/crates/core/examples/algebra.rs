//! Soft-number arithmetic: products, powers, soft zeros and the bridge form.

use softnum::{SoftNumber, SoftZero};

fn main() -> Result<(), softnum::SoftError> {
    let p = SoftNumber::new(2.0, 3.0)?;
    let q = SoftNumber::new(4.0, 5.0)?;

    println!("p       = {p}");
    println!("q       = {q}");
    println!("p + q   = {}", p.checked_add(q)?);
    println!("p * q   = {}", p.checked_mul(q)?);
    println!("p / q   = {}", p.checked_div(q)?);
    println!("p^3     = {}", p.checked_pow(3)?);
    // 1 + 2t + t² at p
    println!("poly(p) = {}", p.eval_poly(&[1.0, 2.0, 1.0])?);

    let a = SoftZero::new(3.0)?;
    let b = SoftZero::new(-7.0)?;
    println!("3z0 * -7z0 = {}", a * b);
    println!("2 * 3z0    = {}", SoftNumber::from(2.0 * a));

    let pair = p.to_bridge_pair();
    println!("bridge: {} | {}", pair.left, pair.right);
    println!("back:   {}", SoftNumber::try_from(pair)?);

    let mut xs = [q, p, SoftNumber::soft_zero(-1.0)?, SoftNumber::from_real(3.0)?];
    xs.sort();
    let sorted: Vec<String> = xs.iter().map(ToString::to_string).collect();
    println!("sorted: {}", sorted.join(" < "));
    Ok(())
}
