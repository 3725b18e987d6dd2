//! Soft numbers: the commutative algebra `a0̄ ∔ b` where the unit `0̄`
//! squares to the real zero.
//!
//! A [`SoftNumber`] stores two finite `f64` coefficients: the *soft* part
//! (the multiple of `0̄`) and the *real* part (the multiple of `1̄`).
//! Arithmetic is exposed through `checked_*` methods, which report
//! overflow instead of storing a non-finite component.
//!
//! Lifting an analytic function through [`AnalyticFn::lift`] follows
//! `f(α0̄ ∔ x) = αf′(x)0̄ ∔ f(x)`, which is forward-mode differentiation
//! in disguise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SoftError {
    #[error("non-finite component (soft = {soft}, real = {real})")]
    NonFinite { soft: f64, real: f64 },
    #[error("arithmetic overflow in {op}")]
    Overflow { op: &'static str },
    #[error("division by a soft number with zero real part")]
    DivisionByZeroReal,
    #[error("{func} is undefined at real part {value}")]
    Domain { func: &'static str, value: f64 },
    #[error("tan has a pole at real part {value}")]
    Pole { value: f64 },
    #[error("bridge pair sides disagree: left ({left_soft}, {left_real}) vs right ({right_soft}, {right_real})")]
    MismatchedBridge {
        left_soft: f64,
        left_real: f64,
        right_soft: f64,
        right_real: f64,
    },
    #[error("bridge pair must hold one LEFT and one RIGHT bridge number")]
    BridgeSides,
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
}

pub type Result<T> = std::result::Result<T, SoftError>;

/// An element `a0̄ ∔ b` of the soft-number algebra.
///
/// Both components are always finite. Equality is exact componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SoftNumber {
    soft: f64,
    real: f64,
}

impl SoftNumber {
    pub const ZERO: SoftNumber = SoftNumber { soft: 0.0, real: 0.0 };
    pub const ONE: SoftNumber = SoftNumber { soft: 0.0, real: 1.0 };
    /// `1·0̄`, the unit of the zero axis.
    pub const SOFT_UNIT: SoftNumber = SoftNumber { soft: 1.0, real: 0.0 };

    pub fn new(soft: f64, real: f64) -> Result<Self> {
        if soft.is_finite() && real.is_finite() {
            Ok(SoftNumber { soft, real })
        } else {
            Err(SoftError::NonFinite { soft, real })
        }
    }

    pub fn from_real(real: f64) -> Result<Self> {
        Self::new(0.0, real)
    }

    /// The pure soft zero `a0̄`.
    pub fn soft_zero(coeff: f64) -> Result<Self> {
        Self::new(coeff, 0.0)
    }

    #[inline]
    pub fn soft(&self) -> f64 {
        self.soft
    }

    #[inline]
    pub fn real(&self) -> f64 {
        self.real
    }

    pub fn is_soft_zero(&self) -> bool {
        self.real == 0.0
    }

    fn finite(soft: f64, real: f64, op: &'static str) -> Result<Self> {
        if soft.is_finite() && real.is_finite() {
            Ok(SoftNumber { soft, real })
        } else {
            Err(SoftError::Overflow { op })
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Self::finite(self.soft + rhs.soft, self.real + rhs.real, "add")
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Self::finite(self.soft - rhs.soft, self.real - rhs.real, "sub")
    }

    /// `(a0̄ ∔ b)(c0̄ ∔ d) = (ad + bc)0̄ ∔ bd`; the `ac·0̄²` term vanishes.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        Self::finite(
            self.soft * rhs.real + self.real * rhs.soft,
            self.real * rhs.real,
            "mul",
        )
    }

    pub fn checked_scale(self, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(SoftError::NonFinite { soft: k, real: k });
        }
        Self::finite(k * self.soft, k * self.real, "scale")
    }

    /// Inverse of [`checked_mul`](Self::checked_mul). The divisor must have
    /// a nonzero real part: pure soft zeros are zero divisors.
    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.real == 0.0 {
            return Err(SoftError::DivisionByZeroReal);
        }
        let d = rhs.real;
        Self::finite(
            (self.soft * d - self.real * rhs.soft) / (d * d),
            self.real / d,
            "div",
        )
    }

    /// Natural power in closed form: `(a0̄ ∔ b)ⁿ = n·a·bⁿ⁻¹0̄ ∔ bⁿ`.
    ///
    /// `n = 0` gives the multiplicative identity `0·0̄ ∔ 1`.
    pub fn checked_pow(self, n: u32) -> Result<Self> {
        if n == 0 {
            return Ok(Self::ONE);
        }
        let exp = i32::try_from(n).map_err(|_| SoftError::Overflow { op: "pow" })?;
        let soft = f64::from(n) * self.soft * self.real.powi(exp - 1);
        Self::finite(soft, self.real.powi(exp), "pow")
    }

    /// Evaluates `c₀ + c₁t + … + c_N tᴺ` at this soft number.
    ///
    /// Horner's scheme runs on the real part and carries the formal
    /// derivative alongside, so the result is `αP′(x)0̄ ∔ P(x)`.
    pub fn eval_poly(self, coeffs: &[f64]) -> Result<Self> {
        let (last, rest) = coeffs.split_last().ok_or(SoftError::EmptyPolynomial)?;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(SoftError::Overflow { op: "poly" });
        }
        let x = self.real;
        let mut value = *last;
        let mut deriv = 0.0;
        for &c in rest.iter().rev() {
            deriv = deriv * x + value;
            value = value * x + c;
        }
        Self::finite(self.soft * deriv, value, "poly")
    }

    pub fn to_bridge_pair(self) -> BridgePair {
        BridgePair {
            left: BridgeNumber::left(self.soft, self.real),
            right: BridgeNumber::right(self.soft, self.real),
        }
    }

    pub fn from_bridge_pair(pair: BridgePair) -> Result<Self> {
        let BridgePair { left, right } = pair;
        if left.side != BridgeSide::Left || right.side != BridgeSide::Right {
            return Err(SoftError::BridgeSides);
        }
        if left.soft_coeff != right.soft_coeff || left.real_coeff != right.real_coeff {
            return Err(SoftError::MismatchedBridge {
                left_soft: left.soft_coeff,
                left_real: left.real_coeff,
                right_soft: right.soft_coeff,
                right_real: right.real_coeff,
            });
        }
        Self::new(left.soft_coeff, left.real_coeff)
    }
}

impl Neg for SoftNumber {
    type Output = SoftNumber;

    fn neg(self) -> SoftNumber {
        SoftNumber {
            soft: -self.soft,
            real: -self.real,
        }
    }
}

impl Eq for SoftNumber {}

/// Lexicographic: real parts first, soft parts break ties.
///
/// On pure soft zeros this reduces to ordering by coefficient.
impl Ord for SoftNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        // components are finite, so partial_cmp never fails
        let by = |x: f64, y: f64| x.partial_cmp(&y).expect("finite components");
        by(self.real, other.real).then_with(|| by(self.soft, other.soft))
    }
}

impl PartialOrd for SoftNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<BridgePair> for SoftNumber {
    type Error = SoftError;

    fn try_from(pair: BridgePair) -> Result<Self> {
        Self::from_bridge_pair(pair)
    }
}

impl From<SoftZero> for SoftNumber {
    fn from(z: SoftZero) -> Self {
        SoftNumber {
            soft: z.0,
            real: 0.0,
        }
    }
}

/// Canonical text form `<a>z0 + <b>`, see [`crate::text`].
impl fmt::Display for SoftNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}z0 + {}", canonical_f64(self.soft), canonical_f64(self.real))
    }
}

/// Shortest round-trip decimal, with negative zero folded into zero.
pub(crate) fn canonical_f64(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// A pure multiple `a0̄` of the soft unit.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SoftZero(f64);

impl SoftZero {
    pub fn new(coeff: f64) -> Result<Self> {
        if coeff.is_finite() {
            Ok(SoftZero(coeff))
        } else {
            Err(SoftError::NonFinite {
                soft: coeff,
                real: 0.0,
            })
        }
    }

    pub fn coeff(self) -> f64 {
        self.0
    }
}

impl Add for SoftZero {
    type Output = SoftZero;

    fn add(self, rhs: SoftZero) -> SoftZero {
        SoftZero(self.0 + rhs.0)
    }
}

impl Sub for SoftZero {
    type Output = SoftZero;

    fn sub(self, rhs: SoftZero) -> SoftZero {
        SoftZero(self.0 - rhs.0)
    }
}

/// Nullity: the product of two soft zeros is the real number 0.
impl Mul for SoftZero {
    type Output = f64;

    fn mul(self, _rhs: SoftZero) -> f64 {
        0.0
    }
}

/// `b(a0̄) = (ab)0̄`.
impl Mul<SoftZero> for f64 {
    type Output = SoftZero;

    fn mul(self, rhs: SoftZero) -> SoftZero {
        SoftZero(self * rhs.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BridgeSide {
    /// `a0̄ ⊥ b`
    Left,
    /// `b ⊥ a0̄`
    Right,
}

/// One ordered bridging `a0̄ ⊥ b` or `b ⊥ a0̄`.
///
/// The side takes part in equality: `a0̄ ⊥ b` and `b ⊥ a0̄` never compare
/// equal, because bridging does not commute.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BridgeNumber {
    pub side: BridgeSide,
    pub soft_coeff: f64,
    pub real_coeff: f64,
}

impl BridgeNumber {
    pub fn left(soft_coeff: f64, real_coeff: f64) -> Self {
        BridgeNumber {
            side: BridgeSide::Left,
            soft_coeff,
            real_coeff,
        }
    }

    pub fn right(soft_coeff: f64, real_coeff: f64) -> Self {
        BridgeNumber {
            side: BridgeSide::Right,
            soft_coeff,
            real_coeff,
        }
    }
}

impl fmt::Display for BridgeNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (canonical_f64(self.soft_coeff), canonical_f64(self.real_coeff));
        match self.side {
            BridgeSide::Left => write!(f, "{a}z0 ⊥ {b}"),
            BridgeSide::Right => write!(f, "{b} ⊥ {a}z0"),
        }
    }
}

/// The two bridge numbers making up one soft number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BridgePair {
    pub left: BridgeNumber,
    pub right: BridgeNumber,
}

/// Functions that can be lifted onto soft numbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AnalyticFn {
    Exp,
    Ln,
    Sin,
    Cos,
    Tan,
    Sqrt,
    Recip,
    /// `x ↦ xʳ` for a fixed real exponent, on `x > 0`.
    PowReal(f64),
}

/// `|cos x|` below this counts as a pole of tan.
pub const TAN_POLE_TOLERANCE: f64 = 1e-12;

impl AnalyticFn {
    pub const ALL_NAMES: [&'static str; 8] =
        ["exp", "ln", "sin", "cos", "tan", "sqrt", "recip", "pow"];

    pub fn name(&self) -> &'static str {
        match self {
            AnalyticFn::Exp => "exp",
            AnalyticFn::Ln => "ln",
            AnalyticFn::Sin => "sin",
            AnalyticFn::Cos => "cos",
            AnalyticFn::Tan => "tan",
            AnalyticFn::Sqrt => "sqrt",
            AnalyticFn::Recip => "recip",
            AnalyticFn::PowReal(_) => "pow",
        }
    }

    /// Looks up a unary function by name. `pow` needs an exponent and is
    /// not reachable from here.
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => AnalyticFn::Exp,
            "ln" => AnalyticFn::Ln,
            "sin" => AnalyticFn::Sin,
            "cos" => AnalyticFn::Cos,
            "tan" => AnalyticFn::Tan,
            "sqrt" => AnalyticFn::Sqrt,
            "recip" => AnalyticFn::Recip,
            _ => return None,
        })
    }

    pub fn check_domain(&self, x: f64) -> Result<()> {
        let ok = match self {
            AnalyticFn::Exp | AnalyticFn::Sin | AnalyticFn::Cos => true,
            AnalyticFn::Ln | AnalyticFn::Sqrt | AnalyticFn::Recip | AnalyticFn::PowReal(_) => x > 0.0,
            AnalyticFn::Tan => {
                if x.cos().abs() <= TAN_POLE_TOLERANCE {
                    return Err(SoftError::Pole { value: x });
                }
                true
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SoftError::Domain {
                func: self.name(),
                value: x,
            })
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match *self {
            AnalyticFn::Exp => x.exp(),
            AnalyticFn::Ln => x.ln(),
            AnalyticFn::Sin => x.sin(),
            AnalyticFn::Cos => x.cos(),
            AnalyticFn::Tan => x.tan(),
            AnalyticFn::Sqrt => x.sqrt(),
            AnalyticFn::Recip => x.recip(),
            AnalyticFn::PowReal(r) => x.powf(r),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            AnalyticFn::Exp => x.exp(),
            AnalyticFn::Ln => x.recip(),
            AnalyticFn::Sin => x.cos(),
            AnalyticFn::Cos => -x.sin(),
            AnalyticFn::Tan => {
                let c = x.cos();
                1.0 / (c * c)
            }
            AnalyticFn::Sqrt => 0.5 / x.sqrt(),
            AnalyticFn::Recip => -1.0 / (x * x),
            AnalyticFn::PowReal(r) => r * x.powf(r - 1.0),
        }
    }

    /// `f(α0̄ ∔ x) = αf′(x)0̄ ∔ f(x)`.
    pub fn lift(&self, p: SoftNumber) -> Result<SoftNumber> {
        let x = p.real;
        self.check_domain(x)?;
        let real = self.value(x);
        let soft = p.soft * self.derivative(x);
        if real.is_finite() && soft.is_finite() {
            Ok(SoftNumber { soft, real })
        } else {
            Err(SoftError::Overflow { op: self.name() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sn(a: f64, b: f64) -> SoftNumber {
        SoftNumber::new(a, b).unwrap()
    }

    #[test]
    fn rejects_non_finite() {
        assert!(SoftNumber::new(f64::NAN, 0.0).is_err());
        assert!(SoftNumber::new(0.0, f64::INFINITY).is_err());
        assert!(SoftZero::new(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn add_sub() {
        assert_eq!(sn(2.0, 3.0).checked_add(sn(4.0, 5.0)).unwrap(), sn(6.0, 8.0));
        assert_eq!(sn(-1.5, 7.0).checked_add(SoftNumber::ZERO).unwrap(), sn(-1.5, 7.0));
        assert_eq!(sn(1.0, 1.0).checked_sub(sn(1.0, 1.0)).unwrap(), SoftNumber::ZERO);
    }

    #[test]
    fn overflow_is_reported() {
        let big = sn(f64::MAX, f64::MAX);
        assert_eq!(big.checked_add(big), Err(SoftError::Overflow { op: "add" }));
        assert!(big.checked_mul(big).is_err());
        assert!(big.checked_scale(2.0).is_err());
        assert!(sn(1.0, 1e200).checked_pow(3).is_err());
    }

    #[test]
    fn mul_examples() {
        // (2·0̄+3)(4·0̄+5) = 8·0̄² + 10·0̄ + 12·0̄ + 15
        assert_eq!(sn(2.0, 3.0).checked_mul(sn(4.0, 5.0)).unwrap(), sn(22.0, 15.0));
        assert_eq!(sn(-2.5, 9.0).checked_mul(SoftNumber::ONE).unwrap(), sn(-2.5, 9.0));
        assert_eq!(sn(3.0, 0.0).checked_mul(sn(7.0, 0.0)).unwrap(), SoftNumber::ZERO);
    }

    #[test]
    fn scale_examples() {
        assert_eq!(sn(3.0, 4.0).checked_scale(2.0).unwrap(), sn(6.0, 8.0));
        assert_eq!(sn(3.0, 4.0).checked_scale(0.0).unwrap(), SoftNumber::ZERO);
        let z3 = SoftNumber::soft_zero(3.0).unwrap();
        let z5 = SoftNumber::soft_zero(5.0).unwrap();
        assert_eq!(z3.checked_scale(5.0).unwrap(), SoftNumber::soft_zero(15.0).unwrap());
        assert_eq!(z3.checked_scale(5.0).unwrap(), z5.checked_scale(3.0).unwrap());
        assert!(sn(1.0, 1.0).checked_scale(f64::NAN).is_err());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(sn(1.0, 2.0).checked_pow(3).unwrap(), sn(12.0, 8.0));
        assert_eq!(sn(-4.0, 0.5).checked_pow(1).unwrap(), sn(-4.0, 0.5));
        assert_eq!(sn(5.0, 0.0).checked_pow(2).unwrap(), SoftNumber::ZERO);
        assert_eq!(sn(5.0, 0.0).checked_mul(sn(5.0, 0.0)).unwrap(), SoftNumber::ZERO);
        assert_eq!(sn(5.0, 0.0).checked_pow(0).unwrap(), SoftNumber::ONE);
        assert_eq!(sn(5.0, 0.0).checked_pow(1).unwrap(), sn(5.0, 0.0));
    }

    #[test]
    fn poly_examples() {
        assert_eq!(sn(1.0, 3.0).eval_poly(&[0.0, 0.0, 1.0]).unwrap(), sn(6.0, 9.0));
        assert_eq!(sn(2.0, -7.0).eval_poly(&[4.25]).unwrap(), sn(0.0, 4.25));
        assert_eq!(sn(2.0, -7.0).eval_poly(&[0.0, 1.0]).unwrap(), sn(2.0, -7.0));
        assert_eq!(sn(1.0, 1.0).eval_poly(&[]), Err(SoftError::EmptyPolynomial));
    }

    #[test]
    fn lift_examples() {
        let alpha = 2.5;
        assert_eq!(AnalyticFn::Exp.lift(sn(alpha, 0.0)).unwrap(), sn(alpha, 1.0));
        assert_eq!(AnalyticFn::Sin.lift(sn(alpha, 0.0)).unwrap(), sn(alpha, 0.0));
        let ln = AnalyticFn::Ln.lift(sn(1.0, 1.0)).unwrap();
        assert_eq!(ln, sn(1.0, 0.0));
        let h = 1e-6;
        let fd = ((1.0f64 + h).ln() - (1.0f64 - h).ln()) / (2.0 * h);
        assert!((ln.soft() - fd).abs() < 1e-9);
    }

    #[test]
    fn lift_domain_errors() {
        assert!(matches!(
            AnalyticFn::Ln.lift(sn(1.0, 0.0)),
            Err(SoftError::Domain { func: "ln", .. })
        ));
        assert!(AnalyticFn::Sqrt.lift(sn(1.0, -1.0)).is_err());
        assert!(AnalyticFn::Recip.lift(sn(1.0, 0.0)).is_err());
        assert!(AnalyticFn::Recip.lift(sn(1.0, -2.0)).is_err());
        assert!(AnalyticFn::PowReal(0.5).lift(sn(1.0, 0.0)).is_err());
        assert!(matches!(
            AnalyticFn::Tan.lift(sn(1.0, std::f64::consts::FRAC_PI_2)),
            Err(SoftError::Pole { .. })
        ));
    }

    #[test]
    fn div_examples() {
        let q = sn(2.0, 6.0).checked_div(sn(0.0, 2.0)).unwrap();
        assert_eq!(q, sn(1.0, 3.0));
        assert_eq!(q.checked_mul(sn(0.0, 2.0)).unwrap(), sn(2.0, 6.0));
        let p = sn(-3.5, 0.25);
        assert_eq!(p.checked_div(p).unwrap(), SoftNumber::ONE);
        let r = SoftNumber::ONE.checked_div(sn(1.0, 1.0)).unwrap();
        assert_eq!(r, sn(-1.0, 1.0));
        assert_eq!(r.checked_mul(sn(1.0, 1.0)).unwrap(), SoftNumber::ONE);
        assert_eq!(
            sn(1.0, 1.0).checked_div(sn(4.0, 0.0)),
            Err(SoftError::DivisionByZeroReal)
        );
    }

    #[test]
    fn ordering() {
        let z1 = SoftNumber::soft_zero(1.0).unwrap();
        let z2 = SoftNumber::soft_zero(2.0).unwrap();
        assert_eq!(z1.cmp(&z2), Ordering::Less);
        assert_eq!(sn(5.0, 3.0).cmp(&sn(1.0, 4.0)), Ordering::Less);
        assert_eq!(sn(5.0, 3.0).cmp(&sn(5.0, 3.0)), Ordering::Equal);
        assert!(SoftNumber::soft_zero(1e9).unwrap() < SoftNumber::from_real(1e-9).unwrap());
        assert!(SoftZero::new(-1.0).unwrap() < SoftZero::new(0.5).unwrap());
    }

    #[test]
    fn soft_zero_axioms() {
        let a = SoftZero::new(3.0).unwrap();
        let b = SoftZero::new(-4.0).unwrap();
        assert_eq!(a + b, SoftZero::new(-1.0).unwrap());
        assert_eq!(a * b, 0.0);
        assert_eq!(5.0 * a, SoftZero::new(15.0).unwrap());
        assert_eq!(SoftNumber::from(a), SoftNumber::soft_zero(3.0).unwrap());
    }

    #[test]
    fn bridge_pairs() {
        let p = sn(2.0, 3.0);
        let pair = p.to_bridge_pair();
        assert_eq!(pair.left, BridgeNumber::left(2.0, 3.0));
        assert_eq!(pair.right, BridgeNumber::right(2.0, 3.0));
        assert_ne!(pair.left, pair.right);
        assert_eq!(SoftNumber::from_bridge_pair(pair).unwrap(), p);
        assert_eq!(pair.left.to_string(), "2z0 ⊥ 3");
        assert_eq!(pair.right.to_string(), "3 ⊥ 2z0");

        let bad = BridgePair {
            left: BridgeNumber::left(2.0, 3.0),
            right: BridgeNumber::right(2.0, 4.0),
        };
        assert!(matches!(
            SoftNumber::try_from(bad),
            Err(SoftError::MismatchedBridge { .. })
        ));
        let swapped = BridgePair {
            left: pair.right,
            right: pair.left,
        };
        assert_eq!(SoftNumber::try_from(swapped), Err(SoftError::BridgeSides));
    }

    #[test]
    fn display() {
        assert_eq!(sn(22.0, 15.0).to_string(), "22z0 + 15");
        assert_eq!(sn(-0.5, 1e3).to_string(), "-0.5z0 + 1000");
        assert_eq!(sn(-0.0, -0.0).to_string(), "0z0 + 0");
        assert_eq!(sn(2.0, -3.0).to_string(), "2z0 + -3");
    }
}
