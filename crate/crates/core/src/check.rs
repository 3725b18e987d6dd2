//! Self-check suites for the strip geometry, run by `softnum check`.
//!
//! Each suite samples deterministically from `seed`, so two runs with the
//! same configuration print byte-identical reports.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    ab_to_xy, linspace, mobius_point, reciprocal, reciprocal_line_intersection, xy_to_ab,
    PlanePoint, SnsPoint, ABSOLUTE_ZERO,
};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_RADIUS: f64 = 10.0;

pub const LEMMA1_TOLERANCE: f64 = 1e-15;
pub const LEMMA2_TOLERANCE: f64 = 1e-9;
pub const GLUING_TOLERANCE: f64 = 1e-12;
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-12;

pub const LEMMA1_POINTS: usize = 1000;
pub const LEMMA2_PAIRS: usize = 1000;
pub const GLUING_POINTS: usize = 1001;
pub const ROUND_TRIP_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub radius: f64,
    /// Offset added to the seam angle on the `−π` side. Zero for a clean run.
    pub perturb: f64,
    /// Replaces every suite's default tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: DEFAULT_SEED,
            radius: DEFAULT_RADIUS,
            perturb: 0.0,
            tolerance: None,
        }
    }
}

impl CheckConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    /// Failures that are not measured by `max_error`.
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance && self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<12} {}  cases={:<6} max_err={:.3e} tol={:.0e}",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.max_error,
            self.tolerance
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "softnum check (seed {})", self.seed)?;
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        if failed == 0 {
            write!(f, "all {} suites passed", self.suites.len())
        } else {
            write!(f, "{failed} of {} suites FAILED", self.suites.len())
        }
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    let d = (got - want).abs();
    if want == 0.0 {
        d
    } else {
        d / want.abs()
    }
}

/// `1/x` is an involution on `(0, 1]`, lands in `[1, ∞)` and is strictly
/// decreasing.
pub fn lemma1_suite(cfg: &CheckConfig) -> SuiteResult {
    let xs: Vec<f64> = (1..=LEMMA1_POINTS).map(|k| k as f64 / LEMMA1_POINTS as f64).collect();
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    let mut prev = f64::INFINITY;
    for &x in &xs {
        let y = reciprocal(x).expect("x > 0");
        let back = reciprocal(y).expect("y >= 1");
        max_error = max_error.max(rel_err(back, x));
        if y < 1.0 {
            failures.push(format!("1/{x} = {y} < 1"));
        }
        if y >= prev {
            failures.push(format!("not decreasing at x = {x}"));
        }
        prev = y;
    }
    SuiteResult {
        name: "lemma1",
        cases: xs.len(),
        max_error,
        tolerance: cfg.tol(LEMMA1_TOLERANCE),
        failures,
    }
}

fn sample_reciprocal_arg(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x = if rng.random_bool(0.5) {
            rng.random_range(0.0..1.0)
        } else {
            rng.random_range(1.0..50.0)
        };
        if x > 0.0 && x != 1.0 {
            return x;
        }
    }
}

/// Random pairs of lines `x → 1/x` all meet at the absolute zero.
pub fn lemma2_suite(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    let mut cases = 0;
    while cases < LEMMA2_PAIRS {
        let x1 = sample_reciprocal_arg(&mut rng);
        let x2 = sample_reciprocal_arg(&mut rng);
        if x1 == x2 {
            continue;
        }
        cases += 1;
        match reciprocal_line_intersection(x1, x2) {
            Ok(p) => {
                let d = (p.x - ABSOLUTE_ZERO.x).hypot(p.y - ABSOLUTE_ZERO.y);
                max_error = max_error.max(d);
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    SuiteResult {
        name: "lemma2",
        cases,
        max_error,
        tolerance: cfg.tol(LEMMA2_TOLERANCE),
        failures,
    }
}

/// `(φ = π, B)` and `(φ = −π, −B)` are the same point of the strip.
pub fn gluing_suite(cfg: &CheckConfig) -> SuiteResult {
    let r = cfg.radius;
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    let widths = linspace(-1.0, 1.0, GLUING_POINTS);
    for &b in &widths {
        let here = mobius_point(PI, b, r);
        let there = mobius_point(-PI + cfg.perturb, -b, r);
        match (here, there) {
            (Ok(p), Ok(q)) => {
                let d = ((p.x - q.x).powi(2) + (p.y - q.y).powi(2) + (p.z - q.z).powi(2)).sqrt();
                max_error = max_error.max(d);
            }
            (Err(e), _) | (_, Err(e)) => {
                failures.push(e.to_string());
                break;
            }
        }
    }
    SuiteResult {
        name: "gluing",
        cases: widths.len(),
        max_error,
        tolerance: cfg.tol(GLUING_TOLERANCE),
        failures,
    }
}

/// `xy_to_ab ∘ ab_to_xy` is the identity off the axes, `|x| + |y| = |A|`,
/// and the degenerate inputs give their canonical representatives.
pub fn round_trip_suite(cfg: &CheckConfig) -> SuiteResult {
    let r = cfg.radius;
    let a_max = PI * r;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    for _ in 0..ROUND_TRIP_POINTS {
        let a = loop {
            let a = rng.random_range(-a_max..a_max);
            if a != 0.0 {
                break a;
            }
        };
        let b = rng.random_range(-1.0..1.0);
        let p = SnsPoint { height: a, width: b };
        let q = ab_to_xy(p).expect("|B| < 1");
        let back = xy_to_ab(q);
        max_error = max_error
            .max(rel_err(back.height, a))
            .max(rel_err(back.width, b))
            .max(rel_err(q.x.abs() + q.y.abs(), a.abs()));
    }
    let canonical = [
        (PlanePoint { x: 0.0, y: 3.0 }, SnsPoint { height: 3.0, width: 1.0 }),
        (PlanePoint { x: 0.0, y: -3.0 }, SnsPoint { height: 3.0, width: -1.0 }),
        (PlanePoint { x: 0.0, y: 0.0 }, SnsPoint { height: 0.0, width: 0.0 }),
    ];
    for (q, want) in canonical {
        let got = xy_to_ab(q);
        if got != want {
            failures.push(format!("({}, {}) mapped to {got:?}, expected {want:?}", q.x, q.y));
        }
    }
    SuiteResult {
        name: "round-trip",
        cases: ROUND_TRIP_POINTS + canonical.len(),
        max_error,
        tolerance: cfg.tol(ROUND_TRIP_TOLERANCE),
        failures,
    }
}

pub fn run_checks(cfg: &CheckConfig) -> CheckReport {
    CheckReport {
        seed: cfg.seed,
        suites: vec![
            lemma1_suite(cfg),
            lemma2_suite(cfg),
            gluing_suite(cfg),
            round_trip_suite(cfg),
        ],
    }
}
