//! Generalized binomial coefficient tables.
//!
//! The backward difference of order `α` acts through the coefficient
//! sequence
//!
//! ```text
//! d_0 = 1,    d_i = d_{i-1} * (i - 1 - α) / i      (i >= 1)
//! ```
//!
//! which equals `(-1)^i * C(α, i)`, the Taylor coefficients of `(1-x)^α`.
//! The multiplicative recurrence sidesteps the poles of the gamma-function
//! closed form (hit whenever `α + 1 - i` is a non-positive integer) and
//! stays exact for rational `α`. For a non-negative integer order `m` the
//! factor `(i - 1 - m)` vanishes at `i = m + 1`, so the table degenerates
//! to the signed classical binomial row `(-1)^i * C(m, i)` padded with
//! zeros.
//!
//! Three exact identities connect the tables and are relied on throughout:
//!
//! * composition: `d(α) ⊛ d(β) = d(α+β)` (Cauchy convolution),
//! * inversion: `d(α) ⊛ d(-α) = (1, 0, 0, ...)`,
//! * hockey stick: running sums of `d(α)` give `d(α-1)`.

use std::fmt;
use std::ops::Neg;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exact rational difference order in reduced form.
///
/// Any rational is accepted. Orders in `(0, 1)` are the classical regime
/// (see [`FracOrder::is_proper_fraction`]); non-negative integer orders
/// reproduce the classical iterated differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FracOrder(Rational64);

impl FracOrder {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParam("zero denominator in order".into()));
        }
        Ok(FracOrder(Rational64::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        FracOrder(Rational64::from_integer(n))
    }

    /// Parses `"p/q"` or a bare integer.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad order numerator: {s:?}")))?,
                d.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad order denominator: {s:?}")))?,
            ),
            None => (
                s.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad order: {s:?}")))?,
                1,
            ),
        };
        Self::new(n, d)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// True when `0 < α < 1`.
    pub fn is_proper_fraction(&self) -> bool {
        let zero = Rational64::from_integer(0);
        let one = Rational64::from_integer(1);
        self.0 > zero && self.0 < one
    }

    /// `Some(m)` when the order is exactly a non-negative integer `m`.
    pub fn as_nonneg_int(&self) -> Option<u64> {
        if self.0.is_integer() && *self.0.numer() >= 0 {
            Some(*self.0.numer() as u64)
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &FracOrder) -> Option<FracOrder> {
        use num_traits::CheckedAdd;
        self.0.checked_add(&other.0).map(FracOrder)
    }

    pub fn to_scalar<S: Scalar>(&self) -> S {
        S::from_ratio(self.numer(), self.denom())
    }
}

impl Neg for FracOrder {
    type Output = FracOrder;
    fn neg(self) -> FracOrder {
        FracOrder(-self.0)
    }
}

impl fmt::Display for FracOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite prefix `d_0 .. d_{N-1}` of the coefficient sequence of one order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable<S: Scalar> {
    alpha: S,
    entries: Vec<S>,
}

impl<S: Scalar> CoeffTable<S> {
    /// The order the table was generated from (sum of orders after
    /// convolution).
    pub fn order(&self) -> &S {
        &self.alpha
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &S {
        &self.entries[i]
    }

    /// Cauchy convolution of two equal-length tables. The composition law
    /// makes the result the table of the summed order.
    pub fn convolve(&self, other: &CoeffTable<S>) -> Result<CoeffTable<S>> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(CoeffTable {
            alpha: self.alpha.clone() + other.alpha.clone(),
            entries: S::convolve_prefix(&self.entries, &other.entries),
        })
    }

    /// Running sums; by the hockey-stick identity this is the table of
    /// order `α - 1`.
    pub fn prefix_sums(&self) -> CoeffTable<S> {
        let mut entries = Vec::with_capacity(self.len());
        let mut acc = S::zero();
        for e in &self.entries {
            acc = acc + e.clone();
            entries.push(acc.clone());
        }
        CoeffTable {
            alpha: self.alpha.clone() - S::one(),
            entries,
        }
    }
}

/// Single coefficient `d_i(α)`, exact. O(i); use [`coeff_table`] for runs.
pub fn frac_coeff<S: Scalar>(alpha: &S, i: usize) -> S {
    let mut d = S::one();
    for j in 1..=i {
        let jj = S::from_int(j as i64);
        d = d * (jj.clone() - S::one() - alpha.clone()) / jj;
    }
    d
}

/// First `n` coefficients of order `α`.
pub fn coeff_table<S: Scalar>(alpha: &S, n: usize) -> CoeffTable<S> {
    let mut entries = Vec::with_capacity(n);
    if n > 0 {
        entries.push(S::one());
    }
    for i in 1..n {
        let ii = S::from_int(i as i64);
        let prev = entries[i - 1].clone();
        entries.push(prev * (ii.clone() - S::one() - alpha.clone()) / ii);
    }
    CoeffTable {
        alpha: alpha.clone(),
        entries,
    }
}

/// Rational-mode convenience taking the exact order type.
pub fn coeff_table_for<S: Scalar>(alpha: FracOrder, n: usize) -> CoeffTable<S> {
    coeff_table(&alpha.to_scalar::<S>(), n)
}
