//! Finite-prefix sequences, weight sequences, and built-in families.
//!
//! A [`Seq`] holds the first `N` terms of an infinite sequence; reads below
//! index 0 yield zero, which is the convention that makes every backward
//! difference a finite sum. Operations that consume a length-`N` prefix
//! produce a length-`N` prefix unless documented otherwise.

use std::fmt;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Seq<S: Scalar> {
    entries: Vec<S>,
}

impl<S: Scalar> Seq<S> {
    pub fn new(entries: Vec<S>) -> Self {
        Seq { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Seq {
            entries: vec![S::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    /// Indexed read with the zero convention for negative indices.
    /// Panics beyond the stored prefix; no operation reads past it.
    pub fn get_or_zero(&self, i: isize) -> S {
        if i < 0 {
            S::zero()
        } else {
            self.entries[i as usize].clone()
        }
    }

    pub fn add(&self, other: &Seq<S>) -> Result<Seq<S>> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Seq<S>) -> Result<Seq<S>> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &S) -> Seq<S> {
        Seq {
            entries: self.entries.iter().map(|x| c.clone() * x.clone()).collect(),
        }
    }

    fn zip_with(&self, other: &Seq<S>, f: impl Fn(S, S) -> S) -> Result<Seq<S>> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Seq {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn sup_abs(&self) -> S {
        let mut best = S::zero();
        for x in &self.entries {
            let a = x.abs();
            if a > best {
                best = a;
            }
        }
        best
    }
}

impl<S: Scalar> From<Vec<S>> for Seq<S> {
    fn from(entries: Vec<S>) -> Self {
        Seq { entries }
    }
}

/// A weight sequence: every entry nonzero, checked once at construction.
/// This is the single enforcement point for every later division by `u_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq<S: Scalar> {
    entries: Vec<S>,
}

impl<S: Scalar> WeightSeq<S> {
    pub fn new(entries: Vec<S>) -> Result<Self> {
        for (index, u) in entries.iter().enumerate() {
            if u.is_zero() {
                return Err(Error::ZeroWeight { index });
            }
        }
        Ok(WeightSeq { entries })
    }

    pub fn ones(n: usize) -> Self {
        WeightSeq {
            entries: vec![S::one(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &S {
        &self.entries[i]
    }

    pub fn require_len(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            Err(Error::WeightTooShort {
                needed,
                got: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// Built-in sequence families, parameterized by exact rationals so one
/// description generates either scalar mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `c, c, c, ...`
    Constant(Rational64),
    /// Standard unit vector `e^(j)`.
    Unit(usize),
    /// `1/(k+1)`.
    Harmonic,
    /// `r^k`.
    Geometric(Rational64),
    /// `a + k*d`.
    Arithmetic(Rational64, Rational64),
    /// Uniform draws from the 1/64 grid in `[lo, hi]`, seeded.
    Random {
        lo: Rational64,
        hi: Rational64,
        seed: Option<u64>,
    },
}

impl Family {
    /// Parses the CLI grammar: `constant:c`, `unit:j`, `harmonic`,
    /// `geometric:r`, `arithmetic:a,d`, `random:lo,hi[,seed]`.
    pub fn parse(s: &str) -> Result<Family> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, a),
            None => (s, ""),
        };
        let rat = |t: &str| -> Result<Rational64> {
            let (n, d) = match t.split_once('/') {
                Some((n, d)) => (n.trim().parse::<i64>(), d.trim().parse::<i64>()),
                None => (t.trim().parse::<i64>(), Ok(1)),
            };
            match (n, d) {
                (Ok(n), Ok(d)) if d != 0 => Ok(Rational64::new(n, d)),
                _ => Err(Error::Parse(format!("bad rational parameter: {t:?}"))),
            }
        };
        match name {
            "constant" => Ok(Family::Constant(rat(args)?)),
            "unit" => {
                let j = args.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidParam(format!("unit wants an index, got {args:?}"))
                })?;
                Ok(Family::Unit(j))
            }
            "harmonic" => Ok(Family::Harmonic),
            "geometric" => {
                if args.is_empty() {
                    return Err(Error::InvalidParam("geometric wants a ratio".into()));
                }
                Ok(Family::Geometric(rat(args)?))
            }
            "arithmetic" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::InvalidParam("arithmetic wants start,step".into()));
                }
                Ok(Family::Arithmetic(rat(parts[0])?, rat(parts[1])?))
            }
            "random" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 && parts.len() != 3 {
                    return Err(Error::InvalidParam("random wants lo,hi[,seed]".into()));
                }
                let lo = rat(parts[0])?;
                let hi = rat(parts[1])?;
                if hi < lo {
                    return Err(Error::InvalidParam("random wants lo <= hi".into()));
                }
                let seed = match parts.get(2) {
                    Some(t) => Some(
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::InvalidParam(format!("bad seed: {t:?}")))?,
                    ),
                    None => None,
                };
                Ok(Family::Random { lo, hi, seed })
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Constant(c) => write!(f, "constant:{c}"),
            Family::Unit(j) => write!(f, "unit:{j}"),
            Family::Harmonic => write!(f, "harmonic"),
            Family::Geometric(r) => write!(f, "geometric:{r}"),
            Family::Arithmetic(a, d) => write!(f, "arithmetic:{a},{d}"),
            Family::Random { lo, hi, seed } => match seed {
                Some(s) => write!(f, "random:{lo},{hi},{s}"),
                None => write!(f, "random:{lo},{hi}"),
            },
        }
    }
}

fn scalar_from_rat64<S: Scalar>(r: Rational64) -> S {
    S::from_ratio(*r.numer(), *r.denom())
}

/// First `n` terms of a named family.
pub fn make_family<S: Scalar>(family: &Family, n: usize) -> Seq<S> {
    let entries: Vec<S> = match family {
        Family::Constant(c) => vec![scalar_from_rat64(*c); n],
        Family::Unit(j) => (0..n)
            .map(|k| if k == *j { S::one() } else { S::zero() })
            .collect(),
        Family::Harmonic => (0..n).map(|k| S::from_ratio(1, (k + 1) as i64)).collect(),
        Family::Geometric(r) => {
            let r = scalar_from_rat64::<S>(*r);
            let mut acc = S::one();
            (0..n)
                .map(|k| {
                    if k > 0 {
                        acc = acc.clone() * r.clone();
                    }
                    acc.clone()
                })
                .collect()
        }
        Family::Arithmetic(a, d) => {
            let a = scalar_from_rat64::<S>(*a);
            let d = scalar_from_rat64::<S>(*d);
            (0..n)
                .map(|k| a.clone() + S::from_int(k as i64) * d.clone())
                .collect()
        }
        Family::Random { lo, hi, seed } => {
            // Draws land on the 1/64 grid so rational and float mode
            // produce the same values for the same seed.
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
            let span = (*hi - *lo) * Rational64::from_integer(64);
            let steps = (*span.numer() / *span.denom()) as u64;
            (0..n)
                .map(|_| {
                    let j = rng.gen_range(0..=steps) as i64;
                    scalar_from_rat64::<S>(*lo) + S::from_ratio(j, 64)
                })
                .collect()
        }
    };
    Seq::new(entries)
}
