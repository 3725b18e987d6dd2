//! Soft probabilities: `P(X <= x)` keeps the density as its soft part.

use softnum::prob::{ps_eq, ps_interval, ps_leq, ps_lt, validate_distribution};
use softnum::{ContinuousDistribution, Distribution};

fn main() -> Result<(), softnum::prob::ProbError> {
    let dists = [
        Distribution::uniform(0.0, 1.0)?,
        Distribution::exponential(1.0)?,
        Distribution::normal(0.0, 1.0)?,
    ];
    for d in &dists {
        println!("{d}");
        for x in [0.0, 0.5, 1.0] {
            println!(
                "  x = {x:<4}  P(X<=x) = {:<44} P(X=x) = {:<28} P(X<x) = {}",
                ps_leq(d, x)?.to_string(),
                ps_eq(d, x)?.to_string(),
                ps_lt(d, x)?
            );
        }
        println!("  P(0 < X <= 0.5) = {}", ps_interval(d, 0.0, 0.5)?);
        let (lo, hi) = d.effective_support();
        println!("  effective support [{lo}, {hi}]");
        println!("  {}", validate_distribution(d).to_string().replace('\n', "\n  "));
    }
    Ok(())
}
