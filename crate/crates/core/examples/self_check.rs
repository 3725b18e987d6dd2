//! The geometry self-checks behind `softnum check`, run in-process.

use softnum::check::{run_checks, CheckConfig};

fn main() {
    let clean = run_checks(&CheckConfig::default());
    println!("{clean}\n");

    let perturbed = run_checks(&CheckConfig {
        perturb: 1e-3,
        ..CheckConfig::default()
    });
    println!("{perturbed}");
}
