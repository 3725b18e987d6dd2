//! Continuous distributions and the soft-probability operator.
//!
//! For a continuous `X` the classical `Pr(X = x)` is zero. The soft
//! probability keeps the density as an infinitesimal instead:
//!
//! ```text
//! Ps(X = x)  = f(x)·0̄
//! Ps(X < x)  = F(x)
//! Ps(X <= x) = Ps(X = x) + Ps(X < x) = f(x)·0̄ ∔ F(x)
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use libm::erfc;
use thiserror::Error;

use crate::number::SoftNumber;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("invalid distribution parameter: {0}")]
    InvalidParameter(String),
    #[error("inverted interval: a = {a} > b = {b}")]
    InvertedInterval { a: f64, b: f64 },
    #[error("query point must not be NaN")]
    NanQuery,
    #[error("cannot parse distribution '{0}': expected uniform(lo,hi), exp(rate) or normal(mean,stddev)")]
    Syntax(String),
}

/// A CDF/PDF pair over the reals.
pub trait ContinuousDistribution {
    fn cdf(&self, x: f64) -> f64;
    fn pdf(&self, x: f64) -> f64;
    /// Interval holding all but a negligible amount of mass; used for
    /// validation grids.
    fn effective_support(&self) -> (f64, f64);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionKind {
    Uniform { lo: f64, hi: f64 },
    Exponential { rate: f64 },
    Normal { mean: f64, std_dev: f64 },
}

/// A validated distribution. Parameters are checked at construction so
/// queries never fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distribution {
    kind: DistributionKind,
}

/// Standard normal CDF, through `erfc` to keep precision in the lower tail.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

pub fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

impl Distribution {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self, ProbError> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(ProbError::InvalidParameter(format!(
                "uniform needs finite lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Distribution {
            kind: DistributionKind::Uniform { lo, hi },
        })
    }

    pub fn exponential(rate: f64) -> Result<Self, ProbError> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(ProbError::InvalidParameter(format!(
                "exponential needs a finite rate > 0, got {rate}"
            )));
        }
        Ok(Distribution {
            kind: DistributionKind::Exponential { rate },
        })
    }

    pub fn normal(mean: f64, std_dev: f64) -> Result<Self, ProbError> {
        if !(mean.is_finite() && std_dev.is_finite() && std_dev > 0.0) {
            return Err(ProbError::InvalidParameter(format!(
                "normal needs finite mean and stddev > 0, got ({mean}, {std_dev})"
            )));
        }
        Ok(Distribution {
            kind: DistributionKind::Normal { mean, std_dev },
        })
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    /// Closed support; may be unbounded.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            DistributionKind::Uniform { lo, hi } => (lo, hi),
            DistributionKind::Exponential { .. } => (0.0, f64::INFINITY),
            DistributionKind::Normal { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Inverse CDF for `p` in `[0, 1]`. The normal case bisects the CDF.
    pub fn quantile(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        match self.kind {
            DistributionKind::Uniform { lo, hi } => lo + p * (hi - lo),
            DistributionKind::Exponential { rate } => -(-p).ln_1p() / rate,
            DistributionKind::Normal { mean, std_dev } => {
                if p == 0.0 {
                    return f64::NEG_INFINITY;
                }
                if p == 1.0 {
                    return f64::INFINITY;
                }
                let (mut lo, mut hi) = (-40.0, 40.0);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if std_normal_cdf(mid) < p {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                mean + std_dev * 0.5 * (lo + hi)
            }
        }
    }
}

impl ContinuousDistribution for Distribution {
    fn cdf(&self, x: f64) -> f64 {
        match self.kind {
            DistributionKind::Uniform { lo, hi } => {
                if x <= lo {
                    0.0
                } else if x >= hi {
                    1.0
                } else {
                    (x - lo) / (hi - lo)
                }
            }
            DistributionKind::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            DistributionKind::Normal { mean, std_dev } => std_normal_cdf((x - mean) / std_dev),
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        match self.kind {
            DistributionKind::Uniform { lo, hi } => {
                if (lo..=hi).contains(&x) {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            DistributionKind::Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    rate * (-rate * x).exp()
                }
            }
            DistributionKind::Normal { mean, std_dev } => {
                std_normal_pdf((x - mean) / std_dev) / std_dev
            }
        }
    }

    fn effective_support(&self) -> (f64, f64) {
        match self.kind {
            DistributionKind::Uniform { lo, hi } => (lo, hi),
            DistributionKind::Exponential { rate } => (0.0, 40.0 / rate),
            DistributionKind::Normal { mean, std_dev } => {
                (mean - 8.0 * std_dev, mean + 8.0 * std_dev)
            }
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DistributionKind::Uniform { lo, hi } => write!(f, "uniform({lo},{hi})"),
            DistributionKind::Exponential { rate } => write!(f, "exp({rate})"),
            DistributionKind::Normal { mean, std_dev } => write!(f, "normal({mean},{std_dev})"),
        }
    }
}

/// Parses `uniform(lo,hi)`, `exp(rate)` or `normal(mean,stddev)`.
impl FromStr for Distribution {
    type Err = ProbError;

    fn from_str(s: &str) -> Result<Self, ProbError> {
        let syntax = || ProbError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, rest) = compact.split_once('(').ok_or_else(syntax)?;
        let args = rest.strip_suffix(')').ok_or_else(syntax)?;
        let args = args
            .split(',')
            .map(|a| a.parse::<f64>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>, _>>()?;
        match (name, args.as_slice()) {
            ("uniform", &[lo, hi]) => Distribution::uniform(lo, hi),
            ("exp", &[rate]) => Distribution::exponential(rate),
            ("normal", &[mean, sd]) => Distribution::normal(mean, sd),
            _ => Err(syntax()),
        }
    }
}

/// A soft number whose real part is a probability and whose soft part is
/// a density value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoftProbability(SoftNumber);

impl SoftProbability {
    fn new(density: f64, probability: f64) -> Self {
        debug_assert!(density >= 0.0);
        debug_assert!((0.0..=1.0).contains(&probability));
        SoftProbability(SoftNumber::new(density, probability).expect("finite density and mass"))
    }

    pub fn value(&self) -> SoftNumber {
        self.0
    }

    pub fn soft(&self) -> f64 {
        self.0.soft()
    }

    pub fn real(&self) -> f64 {
        self.0.real()
    }
}

impl From<SoftProbability> for SoftNumber {
    fn from(p: SoftProbability) -> SoftNumber {
        p.0
    }
}

impl fmt::Display for SoftProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_query(x: f64) -> Result<(), ProbError> {
    if x.is_nan() {
        Err(ProbError::NanQuery)
    } else {
        Ok(())
    }
}

/// `Ps(X <= x) = f(x)·0̄ ∔ F(x)`.
pub fn ps_leq<D: ContinuousDistribution + ?Sized>(d: &D, x: f64) -> Result<SoftProbability, ProbError> {
    check_query(x)?;
    Ok(SoftProbability::new(d.pdf(x), d.cdf(x)))
}

/// `Ps(X = x) = f(x)·0̄`.
pub fn ps_eq<D: ContinuousDistribution + ?Sized>(d: &D, x: f64) -> Result<SoftProbability, ProbError> {
    check_query(x)?;
    Ok(SoftProbability::new(d.pdf(x), 0.0))
}

/// `Ps(X < x) = F(x)`, the classical probability.
pub fn ps_lt<D: ContinuousDistribution + ?Sized>(d: &D, x: f64) -> Result<SoftProbability, ProbError> {
    check_query(x)?;
    Ok(SoftProbability::new(0.0, d.cdf(x)))
}

/// `Ps(a < X <= b) = f(b)·0̄ ∔ (F(b) − F(a))`.
///
/// Endpoints may be infinite.
pub fn ps_interval<D: ContinuousDistribution + ?Sized>(
    d: &D,
    a: f64,
    b: f64,
) -> Result<SoftProbability, ProbError> {
    check_query(a)?;
    check_query(b)?;
    if a > b {
        return Err(ProbError::InvertedInterval { a, b });
    }
    let density = if b.is_finite() { d.pdf(b) } else { 0.0 };
    let mass = (d.cdf(b) - d.cdf(a)).max(0.0);
    Ok(SoftProbability::new(density, mass))
}

pub const VALIDATION_GRID_POINTS: usize = 1001;
pub const DENSITY_TOLERANCE: f64 = 1e-6;
pub const LIMIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// Largest `|pdf(x) − F′(x)| / max(1, pdf(x))` over the grid.
    pub max_density_error: f64,
    pub max_density_error_at: f64,
    pub monotone: bool,
    /// First grid point where the CDF decreased.
    pub monotonicity_violation_at: Option<f64>,
    pub lower_limit: f64,
    pub upper_limit: f64,
}

impl ValidationReport {
    pub fn density_ok(&self) -> bool {
        self.max_density_error <= DENSITY_TOLERANCE
    }

    pub fn limits_ok(&self) -> bool {
        self.lower_limit.abs() <= LIMIT_TOLERANCE && (self.upper_limit - 1.0).abs() <= LIMIT_TOLERANCE
    }

    pub fn passed(&self) -> bool {
        self.density_ok() && self.monotone && self.limits_ok()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "density vs dF/dx: max error {:.3e} at x = {} [{}]",
            self.max_density_error,
            self.max_density_error_at,
            if self.density_ok() { "ok" } else { "FAIL" }
        )?;
        match self.monotonicity_violation_at {
            None => writeln!(f, "cdf monotone: ok")?,
            Some(x) => writeln!(f, "cdf monotone: FAIL (decreases at x = {x})")?,
        }
        write!(
            f,
            "cdf limits: F(lo) = {:.3e}, 1 - F(hi) = {:.3e} [{}]",
            self.lower_limit,
            1.0 - self.upper_limit,
            if self.limits_ok() { "ok" } else { "FAIL" }
        )
    }
}

/// Central difference `(F(x+h) − F(x−h)) / 2h` with `h = 1e-6·max(1, |x|)`.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-6 * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Grid of cell midpoints over `[lo, hi]`. Midpoints keep every sample off
/// the support edges, where a density may jump.
pub fn validation_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let width = hi - lo;
    (0..n).map(move |k| lo + width * ((k as f64 + 0.5) / n as f64))
}

/// Checks that the PDF is the derivative of the CDF, that the CDF is
/// monotone, and that it runs from 0 to 1 across the effective support.
pub fn validate_distribution<D: ContinuousDistribution + ?Sized>(d: &D) -> ValidationReport {
    let (lo, hi) = d.effective_support();
    let mut max_err = 0.0;
    let mut max_at = lo;
    let mut prev = d.cdf(lo);
    let mut violation = None;
    for x in validation_grid(lo, hi, VALIDATION_GRID_POINTS) {
        let density = d.pdf(x);
        let err = (density - central_difference(|t| d.cdf(t), x)).abs() / density.max(1.0);
        if err > max_err || err.is_nan() {
            max_err = err;
            max_at = x;
        }
        let c = d.cdf(x);
        if c < prev && violation.is_none() {
            violation = Some(x);
        }
        prev = c;
    }
    if d.cdf(hi) < prev && violation.is_none() {
        violation = Some(hi);
    }
    ValidationReport {
        max_density_error: max_err,
        max_density_error_at: max_at,
        monotone: violation.is_none(),
        monotonicity_violation_at: violation,
        lower_limit: d.cdf(lo),
        upper_limit: d.cdf(hi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Distribution::uniform(1.0, 1.0).is_err());
        assert!(Distribution::uniform(2.0, 1.0).is_err());
        assert!(Distribution::exponential(0.0).is_err());
        assert!(Distribution::exponential(f64::NAN).is_err());
        assert!(Distribution::normal(0.0, -1.0).is_err());
        assert!(Distribution::normal(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn closed_forms() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        assert_eq!(u.cdf(0.5), 0.5);
        assert_eq!(u.pdf(0.5), 1.0);
        let n = Distribution::normal(0.0, 1.0).unwrap();
        assert_eq!(n.cdf(0.0), 0.5);
        let e = Distribution::exponential(2.0).unwrap();
        assert_eq!(e.cdf(0.0), 0.0);
        assert_eq!(e.pdf(0.0), 2.0);
        // away from the kink at 0 the density is the CDF's slope
        for x in [0.1, 0.5, 1.0, 3.0] {
            let fd = central_difference(|t| e.cdf(t), x);
            assert!(close(e.pdf(x), fd, 1e-8), "x = {x}");
        }
    }

    #[test]
    fn soft_probability_examples() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let n = Distribution::normal(0.0, 1.0).unwrap();
        let e = Distribution::exponential(1.0).unwrap();
        let sn = |a, b| SoftNumber::new(a, b).unwrap();

        assert_eq!(ps_leq(&u, 0.5).unwrap().value(), sn(1.0, 0.5));
        let p = ps_leq(&n, 0.0).unwrap();
        assert!(close(p.soft(), 0.398_942_280_401_432_7, 1e-15));
        assert_eq!(p.real(), 0.5);
        assert_eq!(ps_leq(&u, 2.0).unwrap().value(), sn(0.0, 1.0));

        assert_eq!(ps_eq(&u, 0.5).unwrap().value(), sn(1.0, 0.0));
        assert_eq!(ps_eq(&e, 0.0).unwrap().value(), sn(1.0, 0.0));
        assert_eq!(ps_eq(&u, -3.0).unwrap().value(), SoftNumber::ZERO);
        assert_eq!(ps_eq(&e, -1.0).unwrap().value(), SoftNumber::ZERO);

        assert_eq!(ps_lt(&u, 0.25).unwrap().value(), sn(0.0, 0.25));
        assert_eq!(ps_lt(&n, 0.0).unwrap().value(), sn(0.0, 0.5));
        assert!(close(ps_lt(&e, 1e3).unwrap().real(), 1.0, 1e-12));

        assert!(ps_leq(&u, f64::NAN).is_err());
    }

    #[test]
    fn intervals() {
        let u = Distribution::uniform(0.0, 1.0).unwrap();
        let n = Distribution::normal(0.0, 1.0).unwrap();
        let p = ps_interval(&u, 0.2, 0.7).unwrap();
        assert_eq!(p.soft(), 1.0);
        assert!(close(p.real(), 0.5, 1e-15));
        let d = ps_interval(&n, 0.3, 0.3).unwrap();
        assert_eq!(d.value(), SoftNumber::new(n.pdf(0.3), 0.0).unwrap());
        let small = ps_interval(&n, 0.0, 0.001).unwrap();
        assert!((small.real() / 0.398_942_280_4e-3 - 1.0).abs() < 0.01);
        assert_eq!(
            ps_interval(&u, 1.0, 0.0),
            Err(ProbError::InvertedInterval { a: 1.0, b: 0.0 })
        );
        let all = ps_interval(&n, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_eq!(all.value(), SoftNumber::ONE);
    }

    #[test]
    fn parse_literals() {
        assert_eq!("uniform(0,1)".parse::<Distribution>().unwrap(), Distribution::uniform(0.0, 1.0).unwrap());
        assert_eq!("exp(2.5)".parse::<Distribution>().unwrap(), Distribution::exponential(2.5).unwrap());
        assert_eq!(" normal( -1 , 0.5 ) ".parse::<Distribution>().unwrap(), Distribution::normal(-1.0, 0.5).unwrap());
        assert!(matches!("normal(0)".parse::<Distribution>(), Err(ProbError::Syntax(_))));
        assert!(matches!("gamma(1,2)".parse::<Distribution>(), Err(ProbError::Syntax(_))));
        assert!(matches!("uniform(1,0)".parse::<Distribution>(), Err(ProbError::InvalidParameter(_))));
        let d = Distribution::normal(1.5, 2.0).unwrap();
        assert_eq!(d.to_string().parse::<Distribution>().unwrap(), d);
    }

    #[test]
    fn quantiles_invert_cdf() {
        for d in [
            Distribution::uniform(-2.0, 3.0).unwrap(),
            Distribution::exponential(0.5).unwrap(),
            Distribution::normal(1.0, 3.0).unwrap(),
        ] {
            for p in [0.05, 0.25, 0.5, 0.75, 0.95] {
                assert!(close(d.cdf(d.quantile(p)), p, 1e-12), "{d} p = {p}");
            }
        }
    }

    #[test]
    fn validation_passes_for_builtins() {
        for d in [
            Distribution::uniform(0.0, 1.0).unwrap(),
            Distribution::normal(0.0, 1.0).unwrap(),
            Distribution::exponential(2.0).unwrap(),
        ] {
            let r = validate_distribution(&d);
            assert!(r.passed(), "{d}: {r}");
        }
    }

    struct DoubledDensity(Distribution);

    impl ContinuousDistribution for DoubledDensity {
        fn cdf(&self, x: f64) -> f64 {
            self.0.cdf(x)
        }
        fn pdf(&self, x: f64) -> f64 {
            2.0 * self.0.pdf(x)
        }
        fn effective_support(&self) -> (f64, f64) {
            self.0.effective_support()
        }
    }

    #[test]
    fn validation_catches_corrupted_density() {
        let bad = DoubledDensity(Distribution::normal(0.0, 1.0).unwrap());
        let r = validate_distribution(&bad);
        assert!(!r.passed());
        assert!(r.monotone && r.limits_ok());
        // the absolute error f(x) peaks at the mode
        assert!(r.max_density_error_at.abs() < 0.02, "{r}");
        assert!(r.to_string().contains("FAIL"));
    }
}
