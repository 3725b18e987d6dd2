//! Parse and evaluate soft-number expressions, the same path the `eval`
//! subcommand takes.
//!
//! ```text
//! cargo run --example expression_eval -- "sin(1z0 + 0.5)^2"
//! ```

use softnum::expr::{eval, Expr};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec![
            "(2z0 + 3) * (4z0 + 5)".to_string(),
            "exp(1z0 + 0)".to_string(),
            "(1z0 + 2)^3".to_string(),
            "1 / (z0 + 2)".to_string(),
            "ln(sqrt(3z0 + 4))".to_string(),
            "(2z0 + 3".to_string(),
            "1 / 3z0".to_string(),
        ]
    } else {
        args
    };
    for src in &inputs {
        match eval(src) {
            Ok(v) => println!("{src:<24} => {v}"),
            Err(e) => println!("{src:<24} !! {e}"),
        }
    }

    let tree: Expr = "(1z0 + 2)^2 - 4".parse().unwrap();
    println!("{tree:?}");
}
