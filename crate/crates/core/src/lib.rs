//! Soft numbers, soft probabilities and the soft-number Möbius strip.
//!
//! - [`number`]: the algebra `a0̄ ∔ b` with `0̄² = 0`, and lifting of
//!   analytic functions.
//! - [`expr`]: canonical text form and an expression evaluator.
//! - [`prob`]: continuous distributions and `Ps(X ≤ x) = f(x)0̄ ∔ F(x)`.
//! - [`geometry`]: strip coordinates, the reciprocal-line construction and
//!   the Möbius embedding.
//! - [`export`]: CSV/OBJ mesh files with checksummed manifests.
//! - [`check`] and [`cli`]: the pieces behind the `softnum` binary.

pub mod check;
pub mod cli;
pub mod export;
pub mod expr;
pub mod geometry;
pub mod number;
pub mod prob;

pub use number::{AnalyticFn, BridgeNumber, BridgePair, BridgeSide, SoftError, SoftNumber, SoftZero};
pub use prob::{ContinuousDistribution, Distribution, SoftProbability};
