//! Fractional difference operators on finite prefixes.
//!
//! The backward forms are lower triangular: entry `k` needs `x_{k}, ...,
//! x_0` only, so they are exact on a prefix. The forward forms sum over
//! `x_{k+i}` and must truncate at the end of the prefix; they return an
//! explicit valid length plus a first-omitted-term bound per entry instead
//! of pretending the infinite series was summed.

use crate::coeff::{coeff_table, CoeffTable};
use crate::scalar::Scalar;
use crate::seq::Seq;

/// `y_k = sum_{i=0..k} d_i(α) x_{k-i}`, exact.
pub fn backward_diff<S: Scalar>(x: &Seq<S>, alpha: &S) -> Seq<S> {
    let d = coeff_table(alpha, x.len());
    backward_apply(x, &d)
}

/// The inverse operator: same form with the coefficients of `-α`.
pub fn backward_antidiff<S: Scalar>(x: &Seq<S>, alpha: &S) -> Seq<S> {
    backward_diff(x, &alpha.clone().neg())
}

/// Shared lower-triangular Toeplitz kernel.
pub(crate) fn backward_apply<S: Scalar>(x: &Seq<S>, d: &CoeffTable<S>) -> Seq<S> {
    Seq::new(S::convolve_prefix(d.entries(), x.entries()))
}

/// Result of a truncated forward difference.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardDiff<S: Scalar> {
    /// Truncated values `y_k = sum_{i=0..N-1-k} d_i x_{k+i}`.
    pub entries: Seq<S>,
    /// Entries below this index are exact: every omitted coefficient is
    /// exactly zero. Zero for non-integer orders, where the coefficient
    /// tail never terminates.
    pub valid_len: usize,
    /// `|d_{N-k}| * max|x|`, the magnitude of the first omitted term under
    /// the assumption that the unseen tail of `x` stays within the
    /// observed bound.
    pub tail_bounds: Vec<S>,
}

impl<S: Scalar> ForwardDiff<S> {
    pub fn is_truncated(&self, k: usize) -> bool {
        k >= self.valid_len
    }
}

/// Forward difference of order `α` (or of order `-α` when `signed` is set,
/// selecting the inverse-form coefficients).
pub fn forward_diff<S: Scalar>(x: &Seq<S>, alpha: &S, signed: bool) -> ForwardDiff<S> {
    let a = if signed {
        alpha.clone().neg()
    } else {
        alpha.clone()
    };
    let n = x.len();
    // one extra coefficient for the first-omitted-term bounds
    let d = coeff_table(&a, n + 1);
    let xs = x.entries();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = S::zero();
        for i in 0..n - k {
            let c = d.get(i);
            let xv = &xs[k + i];
            if c.is_zero() || xv.is_zero() {
                continue;
            }
            acc = acc + c.clone() * xv.clone();
        }
        out.push(acc);
    }
    let max_abs = x.sup_abs();
    let tail_bounds = (0..n)
        .map(|k| d.get(n - k).abs() * max_abs.clone())
        .collect();
    let valid_len = match a.as_small_nonneg_int() {
        Some(m) => n.saturating_sub(m as usize),
        None => 0,
    };
    ForwardDiff {
        entries: Seq::new(out),
        valid_len,
        tail_bounds,
    }
}

/// `Δ^(α) (Δ^(β) x)` by sequential application. The composition law says
/// this equals `backward_diff(x, α+β)`; tests assert it exactly.
pub fn compose_backward<S: Scalar>(x: &Seq<S>, alpha: &S, beta: &S) -> Seq<S> {
    backward_diff(&backward_diff(x, beta), alpha)
}

/// Same composition through one convolved coefficient table. Must agree
/// with [`compose_backward`] bit for bit; kept as the faster path.
pub fn compose_backward_convolved<S: Scalar>(x: &Seq<S>, alpha: &S, beta: &S) -> Seq<S> {
    let n = x.len();
    let d = coeff_table(alpha, n)
        .convolve(&coeff_table(beta, n))
        .expect("equal lengths by construction");
    backward_apply(x, &d)
}
