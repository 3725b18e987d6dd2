//! Command implementations behind the `softnum` binary.
//!
//! Everything here returns strings or manifests, so the binary only
//! handles argument parsing, printing and exit codes.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::export::{self, ExportError, MeshFileManifest, MeshFormat};
use crate::expr::{self, EvalError};
use crate::geometry::{self, GeometryError, Surface};
use crate::prob::{self, Distribution, ProbError, SoftProbability};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// Environment variable overriding the `check` tolerance.
pub const TOLERANCE_ENV: &str = "SOFTNUM_TOLERANCE";

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("cannot parse query '{0}': expected '<= x', '< x', '= x' or 'in (a,b]'")]
    Query(String),
    #[error("invalid resolution '{0}': expected NxM with N, M >= 2")]
    Resolution(String),
    #[error("invalid {TOLERANCE_ENV} value '{0}'")]
    Tolerance(String),
}

impl CommandError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CommandError::Export(ExportError::Io { .. }) => EXIT_IO,
            _ => EXIT_USAGE,
        }
    }
}

/// `eval`: prints the canonical form of the expression's value.
pub fn eval(expression: &str) -> Result<String, CommandError> {
    Ok(expr::eval(expression)?.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbQuery {
    Leq(f64),
    Lt(f64),
    Eq(f64),
    /// `a < X <= b`
    Interval(f64, f64),
}

impl FromStr for ProbQuery {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, CommandError> {
        let err = || CommandError::Query(s.to_string());
        let s = s.trim();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| err());
        if let Some(rest) = s.strip_prefix("<=") {
            Ok(ProbQuery::Leq(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('<') {
            Ok(ProbQuery::Lt(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('=') {
            Ok(ProbQuery::Eq(num(rest)?))
        } else if let Some(rest) = s.strip_prefix("in") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(err)?;
            let (a, b) = inner.split_once(',').ok_or_else(err)?;
            Ok(ProbQuery::Interval(num(a)?, num(b)?))
        } else {
            Err(err())
        }
    }
}

impl ProbQuery {
    pub fn evaluate(&self, d: &Distribution) -> Result<SoftProbability, ProbError> {
        match *self {
            ProbQuery::Leq(x) => prob::ps_leq(d, x),
            ProbQuery::Lt(x) => prob::ps_lt(d, x),
            ProbQuery::Eq(x) => prob::ps_eq(d, x),
            ProbQuery::Interval(a, b) => prob::ps_interval(d, a, b),
        }
    }
}

#[derive(Serialize)]
struct ProbJson {
    soft: f64,
    real: f64,
}

/// `prob`: the canonical soft probability, then a JSON line with both
/// components.
pub fn prob(distribution: &str, query: &str) -> Result<String, CommandError> {
    let d: Distribution = distribution.parse()?;
    let q: ProbQuery = query.parse()?;
    let p = q.evaluate(&d)?;
    let json = serde_json::to_string(&ProbJson {
        soft: p.soft(),
        real: p.real(),
    })
    .expect("finite floats serialize");
    Ok(format!("{p}\n{json}"))
}

/// `N x M` grid size, written `NxM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub n_phi: usize,
    pub n_b: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            n_phi: 1000,
            n_b: 1000,
        }
    }
}

impl FromStr for Resolution {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, CommandError> {
        let err = || CommandError::Resolution(s.to_string());
        let (a, b) = s.trim().split_once(['x', 'X']).ok_or_else(err)?;
        let n_phi = a.trim().parse().map_err(|_| err())?;
        let n_b = b.trim().parse().map_err(|_| err())?;
        if n_phi < 2 || n_b < 2 {
            return Err(err());
        }
        Ok(Resolution { n_phi, n_b })
    }
}

/// Settings for `mesh` (and the radius used by `check`).
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub radius: f64,
    pub resolution: Resolution,
    pub surface: Surface,
    pub format: MeshFormat,
    pub out: PathBuf,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            radius: 10.0,
            resolution: Resolution::default(),
            surface: Surface::Mobius,
            format: MeshFormat::Csv,
            out: PathBuf::from("mesh.csv"),
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), CommandError> {
        if !(self.radius.is_finite() && self.radius > 1.0) {
            return Err(GeometryError::InvalidRadius(self.radius).into());
        }
        let Resolution { n_phi, n_b } = self.resolution;
        if n_phi < 2 || n_b < 2 {
            return Err(GeometryError::InvalidResolution(n_phi, n_b).into());
        }
        Ok(())
    }
}

/// `mesh`: generates the grid and writes the file plus manifest.
pub fn mesh(config: &CliConfig) -> Result<MeshFileManifest, CommandError> {
    config.validate()?;
    let Resolution { n_phi, n_b } = config.resolution;
    let m = geometry::generate_mesh(config.surface, config.radius, n_phi, n_b)?;
    Ok(export::export_mesh(&m, config.format, &config.out)?)
}

/// Reads [`TOLERANCE_ENV`] if set.
pub fn tolerance_from_env() -> Result<Option<f64>, CommandError> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(Some(t)),
            _ => Err(CommandError::Tolerance(v)),
        },
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(eval("(2z0 + 3) * (4z0 + 5)").unwrap(), "22z0 + 15");
        assert_eq!(eval("exp(1z0 + 0)").unwrap(), "1z0 + 1");
        assert_eq!(eval("(1z0 + 2)^3").unwrap(), "12z0 + 8");
        assert_eq!(eval("1 +").unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn prob_examples() {
        assert_eq!(prob("uniform(0,1)", "<= 0.5").unwrap(), "1z0 + 0.5\n{\"soft\":1.0,\"real\":0.5}");
        let out = prob("normal(0,1)", "= 0").unwrap();
        assert!(out.starts_with("0.3989422804"), "{out}");
        assert!(out.lines().next().unwrap().ends_with("z0 + 0"));
        assert!(prob("exp(1)", "< 0").unwrap().starts_with("0z0 + 0\n"));
        assert!(prob("uniform(0,1)", "in (0.2,0.7]").unwrap().starts_with("1z0 + 0.49999999999999994\n"));
    }

    #[test]
    fn prob_errors() {
        assert!(matches!(prob("uniform(1,0)", "<= 0"), Err(CommandError::Prob(ProbError::InvalidParameter(_)))));
        assert!(matches!(prob("normal(0,1)", ">= 0"), Err(CommandError::Query(_))));
        assert!(matches!(prob("normal(0,1)", "in [0,1]"), Err(CommandError::Query(_))));
        assert!(matches!(
            prob("normal(0,1)", "in (1,0]"),
            Err(CommandError::Prob(ProbError::InvertedInterval { .. }))
        ));
    }

    #[test]
    fn queries() {
        assert_eq!("<= 1.5".parse::<ProbQuery>().unwrap(), ProbQuery::Leq(1.5));
        assert_eq!("<-2".parse::<ProbQuery>().unwrap(), ProbQuery::Lt(-2.0));
        assert_eq!(" = 0 ".parse::<ProbQuery>().unwrap(), ProbQuery::Eq(0.0));
        assert_eq!("in (-1, 2]".parse::<ProbQuery>().unwrap(), ProbQuery::Interval(-1.0, 2.0));
    }

    #[test]
    fn resolutions() {
        assert_eq!("100x50".parse::<Resolution>().unwrap(), Resolution { n_phi: 100, n_b: 50 });
        assert!("1x5".parse::<Resolution>().is_err());
        assert!("100".parse::<Resolution>().is_err());
        assert!("axb".parse::<Resolution>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(CliConfig::default().validate().is_ok());
        let bad = CliConfig {
            radius: 0.5,
            ..CliConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
