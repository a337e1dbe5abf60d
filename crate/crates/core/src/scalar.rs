//! Coefficient fields.
//!
//! Two instantiations are provided: exact arbitrary-precision rationals
//! ([`Rational`]) and double-precision complex numbers ([`Complex64`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Default relative tolerance for comparisons of approximate scalars.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Moduli at or below this are treated as zero by approximate scalars.
pub const NEGLIGIBLE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Rational,
    Complex,
}

impl ScalarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Complex => "complex",
        }
    }
}

/// Field contract shared by the exact and approximate coefficient types.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
{
    const KIND: ScalarKind;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Absolute value as a nonnegative real.
    fn modulus(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Exact equality for exact scalars; relative comparison with a unit
    /// floor, `|a - b| <= tol * max(1, |a|, |b|)`, for approximate ones.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// Zero for the purpose of invertibility checks.
    fn is_negligible(&self) -> bool;

    fn powi(&self, n: usize) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * &base;
            }
        }
        result
    }

    /// A square root when one exists in the field (principal branch for
    /// complex values, exact perfect squares for rationals).
    fn sqrt(&self) -> Option<Self>;

    fn exp(&self) -> Option<Self>;

    fn ln(&self) -> Option<Self>;

    /// Writes the value fields of a JSON term object.
    fn encode(&self, obj: &mut Map<String, Value>);

    /// Reads the value fields of a JSON term object.
    fn decode(obj: &Map<String, Value>) -> Result<Self>;

    /// Parses a command-line style literal.
    fn parse_literal(text: &str) -> Result<Self>;
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = num_integer::Roots::sqrt(self.numer());
        let d = num_integer::Roots::sqrt(self.denom());
        let root = Rational::new(n, d);
        (&root * &root == *self).then_some(root)
    }

    fn exp(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }

    fn ln(&self) -> Option<Self> {
        self.is_one().then(Self::zero)
    }

    fn encode(&self, obj: &mut Map<String, Value>) {
        obj.insert("value".into(), Value::String(format_rational(self)));
    }

    fn decode(obj: &Map<String, Value>) -> Result<Self> {
        match obj.get("value") {
            Some(Value::String(s)) => parse_rational(s),
            Some(Value::Number(n)) => parse_rational(&n.to_string()),
            _ => Err(Error::Format("rational term needs a \"value\" string".into())),
        }
    }

    fn parse_literal(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

impl Scalar for Complex64 {
    const KIND: ScalarKind = ScalarKind::Complex;

    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.norm()).max(other.norm());
        (self - other).norm() <= tol * scale
    }

    fn is_negligible(&self) -> bool {
        !(self.norm() > NEGLIGIBLE)
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }

    fn exp(&self) -> Option<Self> {
        Some(Complex64::exp(*self))
    }

    fn ln(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Complex64::ln(*self))
    }

    fn encode(&self, obj: &mut Map<String, Value>) {
        obj.insert("re".into(), float_value(self.re));
        obj.insert("im".into(), float_value(self.im));
    }

    fn decode(obj: &Map<String, Value>) -> Result<Self> {
        let part = |key: &str| match obj.get(key) {
            Some(Value::Number(n)) => n
                .as_f64()
                .ok_or_else(|| Error::Format(format!("\"{key}\" is not a float"))),
            None => Ok(0.0),
            _ => Err(Error::Format(format!("\"{key}\" must be a number"))),
        };
        Ok(Complex64::new(part("re")?, part("im")?))
    }

    fn parse_literal(text: &str) -> Result<Self> {
        parse_complex(text)
    }
}

fn float_value(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Converts an exact rational to the nearest double, tolerating numerators
/// and denominators far outside the `f64` range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(x) = q.to_f64() {
        if x.is_finite() && (x != 0.0 || q.is_zero()) {
            return x;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
    let scaled = if shift > 0 {
        Rational::new(q.numer().clone(), q.denom() << (shift as usize))
    } else {
        Rational::new(q.numer() << ((-shift) as usize), q.denom().clone())
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p`, `p/q`, or a finite decimal such as `-0.25` or `1.5e-3` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Format(format!("not a rational literal: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = match digits.as_str() {
        "" | "-" | "+" => return Err(bad()),
        d => d,
    };
    let numer = BigInt::from_str(digits).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Format(format!("not a complex literal: {text:?}"));
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        ));
    }
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse().map_err(|_| bad())?,
        };
        return Ok(Complex64::new(re.parse().map_err(|_| bad())?, im));
    }
    if let Ok(x) = t.parse::<f64>() {
        return Ok(Complex64::new(x, 0.0));
    }
    parse_rational(&t).map(|q| Complex64::new(rational_to_f64(&q), 0.0))
}

/// Displays a complex value with 17 significant digits per component.
pub struct ComplexDisplay(pub Complex64);

impl Display for ComplexDisplay {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.16e},{:.16e}", self.0.re, self.0.im)
    }
}
