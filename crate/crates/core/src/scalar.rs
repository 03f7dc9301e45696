//! The two scalar modes: exact rationals over big integers and `f64`.
//!
//! Structural identities are checked in rational mode where equality is
//! exact; float mode exists for probe heuristics and for difference orders
//! that are not rational. Containers are generic over [`Scalar`], so a mode
//! mismatch is a type error inside the library and a reported error at the
//! JSON/CLI boundary.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Scalar mode tag, mirrored in the JSON schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rational,
    Float,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
        }
    }
}

/// Arithmetic scalar used by all sequence and matrix kernels.
pub trait Scalar: Clone + PartialEq + PartialOrd + Debug + Display + Signed + 'static {
    const MODE: Mode;

    /// Exact value `num/den`. Callers guarantee `den != 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Lossy conversion used only for probe evidence, never for identities.
    fn to_f64_lossy(&self) -> f64;

    /// `Some(m)` when the value is exactly a small non-negative integer m.
    fn as_small_nonneg_int(&self) -> Option<u64>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn parse_str(s: &str) -> Result<Self>;

    /// Lower-triangular Toeplitz product `y_k = sum_{i=0..=k} d_i x_{k-i}`
    /// for every `k < x.len()`; both backward operators and the table
    /// convolution reduce to this. Needs `d.len() >= x.len()`.
    ///
    /// The default is the plain double loop. The rational implementation
    /// overrides it: term-by-term fraction addition spends almost all its
    /// time reducing giant intermediate denominators, so it rescales both
    /// inputs to integers over a common denominator once, accumulates in
    /// integer arithmetic, and reduces a single fraction per output entry.
    fn convolve_prefix(d: &[Self], x: &[Self]) -> Vec<Self> {
        let n = x.len();
        assert!(d.len() >= n, "coefficient table shorter than the input");
        (0..n)
            .map(|k| {
                let mut acc = Self::zero();
                for i in 0..=k {
                    if d[i].is_zero() || x[k - i].is_zero() {
                        continue;
                    }
                    acc = acc + d[i].clone() * x[k - i].clone();
                }
                acc
            })
            .collect()
    }
}

/// Rescales fractions to integers over the least common denominator.
fn scaled_integers(xs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    use num_traits::One;
    let mut den = BigInt::one();
    for x in xs {
        den = den.lcm(x.denom());
    }
    let nums = xs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (nums, den)
}

impl Scalar for BigRational {
    const MODE: Mode = Mode::Rational;

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn as_small_nonneg_int(&self) -> Option<u64> {
        if self.is_integer() && !self.is_negative() {
            self.numer().to_u64()
        } else {
            None
        }
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!(
                "expected a \"p/q\" string for a rational entry, got {other}"
            ))),
        }
    }

    fn parse_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn convolve_prefix(d: &[Self], x: &[Self]) -> Vec<Self> {
        use num_traits::Zero as _;
        let n = x.len();
        assert!(d.len() >= n, "coefficient table shorter than the input");
        let (dn, dd) = scaled_integers(&d[..n]);
        let (xn, xd) = scaled_integers(x);
        let den = dd * xd;
        (0..n)
            .map(|k| {
                let mut acc = BigInt::zero();
                for i in 0..=k {
                    let a = &dn[i];
                    let b = &xn[k - i];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc += a * b;
                }
                Ratio::new(acc, den.clone())
            })
            .collect()
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn as_small_nonneg_int(&self) -> Option<u64> {
        if self.fract() == 0.0 && *self >= 0.0 && *self <= 2f64.powi(53) {
            Some(*self as u64)
        } else {
            None
        }
    }

    fn to_json(&self) -> Value {
        serde_json::json!(*self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a number for a float entry, got {v}")))
    }

    fn parse_str(s: &str) -> Result<Self> {
        let x: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("not a float: {s:?}")))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Parse(format!("non-finite float: {s:?}")))
        }
    }
}

/// Canonical `"p/q"` form (always with the slash, denominator positive).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_s)
        .map_err(|_| Error::Parse(format!("bad rational numerator: {s:?}")))?;
    let den = BigInt::from_str(den_s)
        .map_err(|_| Error::Parse(format!("bad rational denominator: {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator: {s:?}")));
    }
    Ok(Ratio::new(num, den))
}

/// Lossy view of a slice, for probe evidence.
pub fn to_f64_vec<S: Scalar>(xs: &[S]) -> Vec<f64> {
    xs.iter().map(Scalar::to_f64_lossy).collect()
}
