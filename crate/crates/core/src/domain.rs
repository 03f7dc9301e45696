//! The weighted fractional-difference partial-sum triangle, its transform,
//! the exact inverse, the BK-norm, membership probes, and basis vectors.
//!
//! For an order `α` and weights `u` the triangle is
//!
//! ```text
//! τ_{nk} = sum_{i=0..n-k} d_i(α) u_{i+k}      (k <= n)
//! ```
//!
//! so the transform `y = τ x` computes `y_k = sum_{j<=k} u_j (Δ^(α) x)_j`:
//! partial sums of the weighted backward differences. The diagonal is
//! `τ_{nn} = u_n`, nonzero by the weight invariant, so the triangle is
//! invertible and the transform is a linear bijection on prefixes. The
//! inverse is applied without forming the inverse matrix:
//!
//! ```text
//! x_k = sum_{i=0..k} d_i(-α) (y_{k-i} - y_{k-i-1}) / u_{k-i}
//! ```
//!
//! Both directions are exact in rational mode.

use crate::coeff::coeff_table;
use crate::error::{Error, Result};
use crate::ops::{backward_antidiff, backward_diff};
use crate::report::{
    probe_limit_equals, ConditionReport, Evidence, Probe, Verdict, WindowStats, Witness,
};
use crate::scalar::{to_f64_vec, Scalar};
use crate::seq::{Seq, WeightSeq};

/// Lower-triangular matrix in packed row storage (`rows[n]` has `n + 1`
/// entries). Entries above the diagonal are structurally zero. A zero
/// diagonal entry is representable — some derived matrices are legitimately
/// degenerate — and [`TriangleMatrix::is_triangle`] reports whether the
/// matrix is a triangle in the invertible sense.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMatrix<S: Scalar> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> TriangleMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "triangle row {n} has {} entries, want {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(TriangleMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![S::zero(); i + 1];
                row[i] = S::one();
                row
            })
            .collect();
        TriangleMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[S] {
        &self.rows[n]
    }

    /// Entry `(n, k)` with the structural zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> S {
        if k > n {
            S::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Nonzero everywhere on the diagonal.
    pub fn is_triangle(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, r)| !r[n].is_zero())
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() < self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against triangle of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = S::zero();
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() || x[k].is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * x[k].clone();
                }
                acc
            })
            .collect())
    }

    pub fn mul_triangle(&self, other: &TriangleMatrix<S>) -> Result<TriangleMatrix<S>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "triangle dims {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        let n = self.dim();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(i + 1);
            for k in 0..=i {
                let mut acc = S::zero();
                for j in k..=i {
                    let a = &self.rows[i][j];
                    let b = &other.rows[j][k];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * b.clone();
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(TriangleMatrix { rows })
    }

    /// Column `j`, padded with the structural zeros above the diagonal.
    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.dim()).map(|n| self.get(n, j)).collect()
    }
}

/// The triangle of the weighted fractional-difference partial-sum operator.
pub fn domain_triangle<S: Scalar>(
    alpha: &S,
    u: &WeightSeq<S>,
    n: usize,
) -> Result<TriangleMatrix<S>> {
    u.require_len(n)?;
    let d = coeff_table(alpha, n);
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let mut acc = S::zero();
            for i in 0..=(r - k) {
                let c = d.get(i);
                if c.is_zero() {
                    continue;
                }
                acc = acc + c.clone() * u.get(i + k).clone();
            }
            row.push(acc);
        }
        rows.push(row);
    }
    Ok(TriangleMatrix { rows })
}

fn require_weights<S: Scalar>(u: &WeightSeq<S>, len: usize) -> Result<()> {
    u.require_len(len)
}

/// `y_k = sum_{j<=k} u_j (Δ^(α) x)_j`, computed streaming. Matches the
/// row-by-row triangle product exactly; tests assert the agreement.
pub fn transform<S: Scalar>(x: &Seq<S>, alpha: &S, u: &WeightSeq<S>) -> Result<Seq<S>> {
    require_weights(u, x.len())?;
    let w = backward_diff(x, alpha);
    let mut out = Vec::with_capacity(x.len());
    let mut acc = S::zero();
    for (j, wj) in w.entries().iter().enumerate() {
        acc = acc + u.get(j).clone() * wj.clone();
        out.push(acc.clone());
    }
    Ok(Seq::new(out))
}

/// Exact inverse of [`transform`]: first differences, divide by the
/// weights, then apply the inverse-order backward difference.
pub fn inverse_transform<S: Scalar>(y: &Seq<S>, alpha: &S, u: &WeightSeq<S>) -> Result<Seq<S>> {
    require_weights(u, y.len())?;
    let mut v = Vec::with_capacity(y.len());
    for k in 0..y.len() {
        let prev = y.get_or_zero(k as isize - 1);
        let cur = y.entries()[k].clone();
        v.push((cur - prev) / u.get(k).clone());
    }
    Ok(backward_antidiff(&Seq::new(v), alpha))
}

/// Sup-norm estimate over a prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate<S: Scalar> {
    /// `max_k |transform(x)_k|` over the prefix.
    pub value: S,
    /// Always a lower bound of the true sup: the tail is unseen.
    pub lower_bound: bool,
    pub truncation: usize,
}

/// The BK-norm of the domain space: sup of the transform magnitudes.
pub fn bk_norm<S: Scalar>(x: &Seq<S>, alpha: &S, u: &WeightSeq<S>) -> Result<NormEstimate<S>> {
    let y = transform(x, alpha, u)?;
    Ok(NormEstimate {
        value: y.sup_abs(),
        lower_bound: true,
        truncation: x.len(),
    })
}

/// Target space for membership probes: null or convergent sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTag {
    Null,
    Convergent,
}

impl SpaceTag {
    pub fn label(self) -> &'static str {
        match self {
            SpaceTag::Null => "c0",
            SpaceTag::Convergent => "c",
        }
    }
}

/// Window/tolerance probe with its target space.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipProbe {
    pub space: SpaceTag,
    pub window: usize,
    pub tolerance: f64,
}

impl MembershipProbe {
    pub fn new(space: SpaceTag, window: usize, tolerance: f64) -> Result<Self> {
        if window < 2 {
            return Err(Error::InvalidParam("probe window must be >= 2".into()));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidParam("probe tolerance must be > 0".into()));
        }
        Ok(MembershipProbe {
            space,
            window,
            tolerance,
        })
    }
}

/// Probes whether `x` belongs to the domain space by transforming it and
/// testing the image against the target space on trailing windows.
///
/// Null target: last-window magnitudes below tolerance with non-increasing
/// window maxima. Convergent target: the same test on the last-window
/// oscillation. Violation needs a certificate (growth trend, or a value
/// stabilized away from zero for the null target).
pub fn membership<S: Scalar>(
    x: &Seq<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    probe: &MembershipProbe,
) -> Result<ConditionReport> {
    if x.len() < 2 * probe.window {
        return Err(Error::TruncationTooSmall {
            needed: 2 * probe.window,
            got: x.len(),
        });
    }
    let y = transform(x, alpha, u)?;
    let ys = to_f64_vec(y.entries());
    let inner = Probe::new(probe.window, probe.tolerance)?;
    let (label, verdict, evidence) = match probe.space {
        SpaceTag::Null => {
            let p = probe_limit_equals(&ys, 0.0, &inner);
            ("membership-c0", p.verdict, p.evidence)
        }
        SpaceTag::Convergent => {
            let st = WindowStats::compute(&ys, probe.window);
            let mut ev = Evidence {
                sup: Some(st.peak.1),
                limit: Some(st.last_value),
                oscillation: Some(st.last_osc()),
                window_maxima: st.max_abs.clone(),
                ..Evidence::default()
            };
            let verdict = if st.growth_certified() {
                ev.witness = Some(Witness {
                    row: Some(st.peak.0),
                    col: None,
                    value: ys[st.peak.0],
                });
                ev.note = Some("certified growth trend; not convergent".into());
                Verdict::Violated
            } else if st.last_osc() < probe.tolerance && st.osc_non_increasing() {
                Verdict::Satisfied
            } else {
                Verdict::Inconclusive
            };
            ("membership-c", verdict, ev)
        }
    };
    Ok(ConditionReport::new(
        label,
        verdict,
        evidence,
        &inner,
        (x.len(), 1),
    ))
}

/// Basis vector `b^(j)`: the preimage of the unit vector, so that
/// `transform(b^(j)) = e^(j)` exactly. Equivalently column `j` of the
/// triangle inverse.
pub fn schauder_basis<S: Scalar>(
    j: usize,
    alpha: &S,
    u: &WeightSeq<S>,
    n: usize,
) -> Result<Seq<S>> {
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    let mut e = vec![S::zero(); n];
    e[j] = S::one();
    inverse_transform(&Seq::new(e), alpha, u)
}

/// The extra basis direction for the convergent-target space: the preimage
/// of the all-ones sequence.
pub fn schauder_limit_vector<S: Scalar>(alpha: &S, u: &WeightSeq<S>, n: usize) -> Result<Seq<S>> {
    inverse_transform(&Seq::new(vec![S::one(); n]), alpha, u)
}
