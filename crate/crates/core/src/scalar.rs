//! Scalar abstractions shared by the numeric modules.
//!
//! Two roles are separated:
//!
//! * [`Real`] is a floating-point type used for moduli, eigenvalues and
//!   every quantity the checker compares under a tolerance (`f32`, `f64`).
//! * [`Coefficient`] is the coefficient ring of polynomial transition maps.
//!   It is either a float or the exact [`BigRational`], in which case
//!   derivatives and contact orders are computed without rounding.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, One, ToPrimitive, Zero};
use thiserror::Error;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Text form used in scheme files. `Debug` prints the shortest string
    /// that parses back to the same value.
    fn to_text(&self) -> String {
        format!("{self:?}")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Coefficient ring of polynomial maps.
pub trait Coefficient: Clone + Debug + PartialEq + Num + Send + Sync + 'static {
    /// Embedding of a small integer (derivative multipliers, factorials).
    fn from_int(n: i64) -> Self;

    /// Value as a float.
    fn to_real<R: Real>(&self) -> R;

    /// `|self|` as a float, for magnitude estimates.
    fn abs_real<R: Real>(&self) -> R {
        self.to_real::<R>().abs()
    }

    /// Absolute value in the ring itself.
    fn abs_value(&self) -> Self;

    /// Zero test used when deciding whether a derivative vanishes.
    /// Exact for rationals; relative to `scale` for floats.
    fn negligible(&self, scale: &Self) -> bool;

    /// Parses a literal such as `"3"`, `"-1/4"`, `"0.125"` or `"2.5e-3"`.
    fn parse_literal(s: &str) -> Result<Self, LiteralError>;

    /// Canonical text form.
    fn to_literal(&self) -> String;
}

impl Coefficient for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn to_real<R: Real>(&self) -> R {
        R::lit(*self)
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn negligible(&self, scale: &Self) -> bool {
        self.abs() <= 64.0 * f64::EPSILON * scale.abs().max(1.0)
    }
    fn parse_literal(s: &str) -> Result<Self, LiteralError> {
        let q = parse_rational(s)?;
        Ok(q.to_f64().unwrap_or(f64::NAN))
    }
    fn to_literal(&self) -> String {
        format!("{self:?}")
    }
}

impl Coefficient for f32 {
    fn from_int(n: i64) -> Self {
        n as f32
    }
    fn to_real<R: Real>(&self) -> R {
        R::from_f32(*self).expect("finite")
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn negligible(&self, scale: &Self) -> bool {
        self.abs() <= 64.0 * f32::EPSILON * scale.abs().max(1.0)
    }
    fn parse_literal(s: &str) -> Result<Self, LiteralError> {
        let q = parse_rational(s)?;
        Ok(q.to_f32().unwrap_or(f32::NAN))
    }
    fn to_literal(&self) -> String {
        format!("{self:?}")
    }
}

impl Coefficient for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_real<R: Real>(&self) -> R {
        // ToPrimitive on Ratio<BigInt> handles huge numerators/denominators.
        R::lit(self.to_f64().unwrap_or(f64::NAN))
    }
    fn abs_value(&self) -> Self {
        num_traits::Signed::abs(self)
    }
    fn negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
    fn parse_literal(s: &str) -> Result<Self, LiteralError> {
        parse_rational(s)
    }
    fn to_literal(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid numeric literal {literal:?}: {reason}")]
pub struct LiteralError {
    pub literal: String,
    pub reason: &'static str,
}

fn literal_error(s: &str, reason: &'static str) -> LiteralError {
    LiteralError {
        literal: s.to_string(),
        reason,
    }
}

/// Exact parse of a rational or decimal literal.
///
/// Accepted forms: `p`, `p/q`, `[-]d.ddd`, and decimals with an `e`/`E`
/// exponent. Decimal inputs are converted exactly (`0.1` is `1/10`).
pub fn parse_rational(s: &str) -> Result<BigRational, LiteralError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(literal_error(s, "empty"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| literal_error(s, "bad numerator"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| literal_error(s, "bad denominator"))?;
        if d.is_zero() {
            return Err(literal_error(s, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..]
                .parse()
                .map_err(|_| literal_error(s, "bad exponent"))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(literal_error(s, "no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(literal_error(s, "unexpected character"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).map_err(|_| literal_error(s, "no digits"))?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

/// Relative comparison `|a - b| <= tol * max(|a|, |b|)`; exact equality
/// always passes (covers `a = b = 0`).
pub fn rel_eq<R: Real>(a: R, b: R, tol: R) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Relative comparison of two positive quantities given by their natural
/// logarithms: `|exp(ln_a - ln_b) - 1| <= tol`. Avoids overflow when the
/// quantities themselves are astronomically large or small.
pub fn rel_eq_log<R: Real>(ln_a: R, ln_b: R, tol: R) -> bool {
    let d = ln_a - ln_b;
    d.is_finite() && d.exp_m1().abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_exact_literals() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-1/4").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2.5e-3").unwrap(), q(1, 400));
        assert_eq!(parse_rational("1.5E2").unwrap(), q(150, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn literal_round_trip() {
        let v = q(-7, 3);
        assert_eq!(BigRational::parse_literal(&v.to_literal()).unwrap(), v);
        let f = 0.1f64;
        assert_eq!(f64::parse_literal(&f.to_literal()).unwrap(), f);
        assert_eq!(1e-300f64.to_text().parse::<f64>().unwrap(), 1e-300);
    }

    #[test]
    fn log_comparison() {
        assert!(rel_eq_log(1.0f64, 1.0 + 1e-12, 1e-9));
        assert!(!rel_eq_log(1.0f64, -1.0, 1e-9));
        assert!(!rel_eq_log(f64::NAN, 0.0, 1e-9));
    }
}
