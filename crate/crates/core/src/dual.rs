//! Duality tests and matrix-class characterizations.
//!
//! The pairing of a sequence `a` against a member `x` of a domain space is
//! rewritten in transform coordinates by summation by parts. With
//! `y = transform(x)` and the column-tail weights
//!
//! ```text
//! w_j = (1/u_j) * sum_{k=j..m} a_k d_{k-j}(-α)
//! ```
//!
//! taken at boundary `m`, the finite identity
//!
//! ```text
//! sum_{k=0..m} a_k x_k  =  sum_{j<m} (w_j - w_{j+1}) y_j + w_m y_m
//! ```
//!
//! holds exactly. Row `n` of the pairing matrix uses boundary `n`, so the
//! matrix applied to `y` reproduces the partial sums of `a·x` verbatim;
//! membership of `a` in the dual reduces to a matrix class question on it.
//! The same weights at the full column boundary rewrite a whole matrix `A`
//! into transform coordinates (its associated matrix), and composing the
//! domain triangle onto `A` gives the matrix whose classical class decides
//! mapping *into* the domain spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::coeff_table;
use crate::domain::{
    domain_triangle, inverse_transform, membership, MembershipProbe, SpaceTag, TriangleMatrix,
};
use crate::error::{Error, Result};
use crate::report::{
    probe_limit_equals, probe_limit_exists, probe_sup_finite, ClassVerdict, ConditionReport,
    Evidence, Probe, SeqProbe, Verdict, WindowStats, Witness,
};
use crate::scalar::{to_f64_vec, Scalar};
use crate::seq::{make_family, Family, Seq, WeightSeq};

/// Rectangular truncation of an infinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InfMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<S>>,
    family: Option<MatrixFamily>,
}

/// Built-in generator tags, kept on the matrix for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFamily {
    Identity,
    CesaroC1,
    Zero,
}

impl MatrixFamily {
    pub fn label(self) -> &'static str {
        match self {
            MatrixFamily::Identity => "identity",
            MatrixFamily::CesaroC1 => "cesaro-c1",
            MatrixFamily::Zero => "zero",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(MatrixFamily::Identity),
            "cesaro-c1" => Ok(MatrixFamily::CesaroC1),
            "zero" => Ok(MatrixFamily::Zero),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    pub fn all() -> [MatrixFamily; 3] {
        [
            MatrixFamily::Identity,
            MatrixFamily::CesaroC1,
            MatrixFamily::Zero,
        ]
    }
}

impl<S: Scalar> InfMatrix<S> {
    pub fn new(entries: Vec<Vec<S>>, family: Option<MatrixFamily>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        for (n, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {n} has {} entries, want {cols}",
                    row.len()
                )));
            }
        }
        Ok(InfMatrix {
            rows,
            cols,
            entries,
            family,
        })
    }

    pub fn from_family(family: MatrixFamily, rows: usize, cols: usize) -> Self {
        let entries = (0..rows)
            .map(|n| {
                (0..cols)
                    .map(|k| match family {
                        MatrixFamily::Identity => {
                            if n == k {
                                S::one()
                            } else {
                                S::zero()
                            }
                        }
                        MatrixFamily::CesaroC1 => {
                            if k <= n {
                                S::from_ratio(1, (n + 1) as i64)
                            } else {
                                S::zero()
                            }
                        }
                        MatrixFamily::Zero => S::zero(),
                    })
                    .collect()
            })
            .collect();
        InfMatrix {
            rows,
            cols,
            entries,
            family: Some(family),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn family(&self) -> Option<MatrixFamily> {
        self.family
    }

    pub fn get(&self, n: usize, k: usize) -> &S {
        &self.entries[n][k]
    }

    pub fn row(&self, n: usize) -> &[S] {
        &self.entries[n]
    }

    pub fn entry_rows(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.entries.iter().map(|r| to_f64_vec(r)).collect()
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() < self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .entries
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

    /// Builds a triangle from square lower-triangular content.
    pub fn into_triangle(self) -> Result<TriangleMatrix<S>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("not square".into()));
        }
        let rows = self
            .entries
            .into_iter()
            .enumerate()
            .map(|(n, mut r)| {
                r.truncate(n + 1);
                r
            })
            .collect();
        TriangleMatrix::from_rows(rows)
    }
}

/// Classical sequence spaces appearing as plain sources or targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSpace {
    Null,
    Convergent,
    Bounded,
    AbsSummable,
}

impl BaseSpace {
    pub fn label(self) -> &'static str {
        match self {
            BaseSpace::Null => "c0",
            BaseSpace::Convergent => "c",
            BaseSpace::Bounded => "linf",
            BaseSpace::AbsSummable => "l1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "c0" => Ok(BaseSpace::Null),
            "c" => Ok(BaseSpace::Convergent),
            "linf" => Ok(BaseSpace::Bounded),
            "l1" => Ok(BaseSpace::AbsSummable),
            other => Err(Error::InvalidParam(format!("unknown space: {other:?}"))),
        }
    }
}

/// Summability conditions by their canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionId {
    /// 31 (also 21, 23, 26): `sup_n sum_k |a_nk| < oo`.
    SupRowAbsSums,
    /// 32 (also 20, 25): `lim_n a_nk` exists for each fixed `k`.
    ColumnLimitsExist,
    /// 33: `lim_k a_nk = 0` for each fixed `n`.
    RowEntriesVanish,
    /// 34 (also 22): `lim_n sum_k a_nk` exists.
    RowSumLimitExists,
    /// 35: `lim_n sum_k a_nk = 0`.
    RowSumsVanish,
    /// 36: `sup_K sum_n |sum_{k in K} a_nk| < oo` over finite column sets.
    SubsetSupFinite,
    /// 37: `lim_n sum_k |a_nk| = 0`.
    AbsRowSumsVanish,
    /// 38: `sup_{n,k} |a_nk| < oo`.
    EntriesBounded,
    /// 39: `lim_n sum_k |a_nk| = sum_k |lim_n a_nk|`.
    AbsRowSumsMatchColumnLimits,
}

impl ConditionId {
    pub fn code(self) -> u8 {
        match self {
            ConditionId::SupRowAbsSums => 31,
            ConditionId::ColumnLimitsExist => 32,
            ConditionId::RowEntriesVanish => 33,
            ConditionId::RowSumLimitExists => 34,
            ConditionId::RowSumsVanish => 35,
            ConditionId::SubsetSupFinite => 36,
            ConditionId::AbsRowSumsVanish => 37,
            ConditionId::EntriesBounded => 38,
            ConditionId::AbsRowSumsMatchColumnLimits => 39,
        }
    }

    /// Accepts canonical codes and the earlier aliases of the same
    /// conditions.
    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            21 | 23 | 26 | 31 => Ok(ConditionId::SupRowAbsSums),
            20 | 25 | 32 => Ok(ConditionId::ColumnLimitsExist),
            33 => Ok(ConditionId::RowEntriesVanish),
            22 | 34 => Ok(ConditionId::RowSumLimitExists),
            35 => Ok(ConditionId::RowSumsVanish),
            36 => Ok(ConditionId::SubsetSupFinite),
            37 => Ok(ConditionId::AbsRowSumsVanish),
            38 => Ok(ConditionId::EntriesBounded),
            39 => Ok(ConditionId::AbsRowSumsMatchColumnLimits),
            other => Err(Error::InvalidParam(format!(
                "unknown condition code {other}"
            ))),
        }
    }
}

// Row aggregates are accumulated in the scalar domain and converted at
// the end, so rational truncations report exact sums (constant row sums
// stay exactly constant) instead of float-summation jitter.
fn abs_row_sums<S: Scalar>(rows: &[Vec<S>]) -> Vec<f64> {
    rows.iter()
        .map(|r| {
            r.iter()
                .fold(S::zero(), |acc, v| acc + v.abs())
                .to_f64_lossy()
        })
        .collect()
}

fn row_sums<S: Scalar>(rows: &[Vec<S>]) -> Vec<f64> {
    rows.iter()
        .map(|r| {
            r.iter()
                .fold(S::zero(), |acc, v| acc + v.clone())
                .to_f64_lossy()
        })
        .collect()
}

fn column<S: Scalar>(rows: &[Vec<S>], k: usize) -> Vec<f64> {
    rows.iter().map(|r| r[k].to_f64_lossy()).collect()
}

/// Per-index limit probes drop the first `index` entries before probing:
/// a finite prefix never changes a limit, and for triangle-shaped content
/// it removes the structural onset at the diagonal, which would otherwise
/// read as a spurious jump inside the probe windows. Indices without two
/// full windows of post-onset data are skipped and noted.
fn probeable_indices(extent: usize, indices: usize, window: usize) -> usize {
    indices.min((extent + 1).saturating_sub(2 * window))
}

fn aggregate_indexed(
    code: &str,
    probes: Vec<(usize, SeqProbe)>,
    limits: bool,
    coverage_note: Option<String>,
    probe: &Probe,
    trunc: (usize, usize),
) -> ConditionReport {
    let mut verdict = Verdict::Satisfied;
    let mut evidence = Evidence::default();
    let mut estimates = Vec::with_capacity(probes.len());
    for (idx, p) in &probes {
        if limits {
            estimates.push((*idx, p.evidence.limit.unwrap_or(f64::NAN)));
        }
        if p.verdict != Verdict::Satisfied && verdict == Verdict::Satisfied {
            evidence.note = Some(format!("first non-satisfied index: {idx}"));
        }
        if p.verdict == Verdict::Violated && evidence.witness.is_none() {
            evidence.witness = p.evidence.witness.clone().map(|w| Witness {
                row: w.row,
                col: Some(*idx),
                value: w.value,
            });
        }
        verdict = verdict.and(p.verdict);
    }
    if probes.is_empty() {
        verdict = Verdict::Inconclusive;
        evidence.note = Some("no index has enough trailing data to probe".into());
    }
    if limits {
        evidence.column_limits = Some(estimates);
    }
    if let Some(extra) = coverage_note {
        evidence.note = Some(match evidence.note.take() {
            Some(n) => format!("{n}; {extra}"),
            None => extra,
        });
    }
    ConditionReport::new(code, verdict, evidence, probe, trunc)
}

/// Evaluates one condition on a dense scalar truncation.
fn eval_condition<S: Scalar>(
    rows: &[Vec<S>],
    id: ConditionId,
    code_label: &str,
    probe: &Probe,
) -> ConditionReport {
    let n_rows = rows.len();
    let n_cols = rows[0].len();
    let trunc = (n_rows, n_cols);
    match id {
        ConditionId::SupRowAbsSums => {
            let s = abs_row_sums(rows);
            let p = probe_sup_finite(&s, probe);
            ConditionReport::new(code_label, p.verdict, p.evidence, probe, trunc)
        }
        ConditionId::EntriesBounded => {
            let s: Vec<f64> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .fold(S::zero(), |m, v| {
                            let a = v.abs();
                            if a > m {
                                a
                            } else {
                                m
                            }
                        })
                        .to_f64_lossy()
                })
                .collect();
            let p = probe_sup_finite(&s, probe);
            ConditionReport::new(code_label, p.verdict, p.evidence, probe, trunc)
        }
        ConditionId::RowSumLimitExists => {
            let s = row_sums(rows);
            let p = probe_limit_exists(&s, probe);
            ConditionReport::new(code_label, p.verdict, p.evidence, probe, trunc)
        }
        ConditionId::RowSumsVanish => {
            let s = row_sums(rows);
            let p = probe_limit_equals(&s, 0.0, probe);
            ConditionReport::new(code_label, p.verdict, p.evidence, probe, trunc)
        }
        ConditionId::AbsRowSumsVanish => {
            let s = abs_row_sums(rows);
            let p = probe_limit_equals(&s, 0.0, probe);
            ConditionReport::new(code_label, p.verdict, p.evidence, probe, trunc)
        }
        ConditionId::ColumnLimitsExist => {
            let upto = probeable_indices(n_rows, n_cols, probe.window);
            let probes = (0..upto)
                .map(|k| {
                    let col = column(&rows[k..], k);
                    (k, probe_limit_exists(&col, probe))
                })
                .collect();
            let note =
                (upto < n_cols).then(|| format!("columns {upto}..{n_cols} lack post-onset data"));
            aggregate_indexed(code_label, probes, true, note, probe, trunc)
        }
        ConditionId::RowEntriesVanish => {
            let upto = probeable_indices(n_cols, n_rows, probe.window);
            let probes = (0..upto)
                .map(|n| {
                    let row = to_f64_vec(&rows[n][n..]);
                    (n, probe_limit_equals(&row, 0.0, probe))
                })
                .collect();
            let note =
                (upto < n_rows).then(|| format!("rows {upto}..{n_rows} lack post-onset data"));
            aggregate_indexed(code_label, probes, false, note, probe, trunc)
        }
        ConditionId::SubsetSupFinite => eval_subset_sup(rows, code_label, probe),
        ConditionId::AbsRowSumsMatchColumnLimits => {
            eval_abs_row_sums_match(rows, code_label, probe)
        }
    }
}

/// Condition 36. Exhaustive over all column subsets up to the cap, Gray
/// code order so each step toggles one column; past the cap a greedy
/// sign-alignment lower bound is reported and the verdict degrades to
/// inconclusive.
fn eval_subset_sup<S: Scalar>(
    scalar_rows: &[Vec<S>],
    code_label: &str,
    probe: &Probe,
) -> ConditionReport {
    let rows: Vec<Vec<f64>> = scalar_rows.iter().map(|r| to_f64_vec(r)).collect();
    let rows = &rows;
    let n_rows = rows.len();
    let n_cols = rows[0].len();
    let trunc = (n_rows, n_cols);
    if n_cols > probe.subset_cap {
        let (best, k) = greedy_subset(rows);
        let evidence = Evidence {
            sup: Some(best),
            note: Some(format!(
                "{n_cols} columns exceed the exhaustive cap {}; greedy lower bound over {} columns",
                probe.subset_cap,
                k.len()
            )),
            ..Evidence::default()
        };
        return ConditionReport::new(code_label, Verdict::Inconclusive, evidence, probe, trunc);
    }
    let mut sums = vec![0.0f64; n_rows];
    let mut best = 0.0f64;
    let mut best_mask: u64 = 0;
    let total: u64 = 1 << n_cols;
    let mut prev: u64 = 0;
    for g in 1..total {
        let gray = g ^ (g >> 1);
        let toggled = (gray ^ prev).trailing_zeros() as usize;
        let sign = if gray & (1 << toggled) != 0 {
            1.0
        } else {
            -1.0
        };
        for (n, row) in rows.iter().enumerate() {
            sums[n] += sign * row[toggled];
        }
        let value: f64 = sums.iter().map(|v| v.abs()).sum();
        if value > best {
            best = value;
            best_mask = gray;
        }
        prev = gray;
    }
    let cols: Vec<usize> = (0..n_cols).filter(|k| best_mask & (1 << k) != 0).collect();
    // terms of the series over n for the extremal subset decide the trend
    let terms: Vec<f64> = rows
        .iter()
        .map(|r| cols.iter().map(|&k| r[k]).sum::<f64>().abs())
        .collect();
    let st = WindowStats::compute(&terms, probe.window);
    let mut evidence = Evidence {
        sup: Some(best),
        window_maxima: st.max_abs.clone(),
        note: Some(format!("extremal columns: {cols:?}")),
        ..Evidence::default()
    };
    let verdict = if st.growth_certified() {
        evidence.witness = Some(Witness {
            row: Some(st.peak.0),
            col: None,
            value: terms[st.peak.0],
        });
        Verdict::Violated
    } else if st.last_max_abs() < probe.tolerance && st.maxima_non_increasing() {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    ConditionReport::new(code_label, verdict, evidence, probe, trunc)
}

fn greedy_subset(rows: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n_cols = rows[0].len();
    let mut sums = vec![0.0f64; rows.len()];
    let mut chosen = Vec::new();
    let mut value = 0.0f64;
    loop {
        let mut best_gain = 0.0f64;
        let mut best_col = None;
        for k in 0..n_cols {
            if chosen.contains(&k) {
                continue;
            }
            let candidate: f64 = sums
                .iter()
                .zip(rows.iter())
                .map(|(s, r)| (s + r[k]).abs())
                .sum();
            if candidate - value > best_gain {
                best_gain = candidate - value;
                best_col = Some(k);
            }
        }
        match best_col {
            Some(k) => {
                for (s, r) in sums.iter_mut().zip(rows.iter()) {
                    *s += r[k];
                }
                value += best_gain;
                chosen.push(k);
            }
            None => break,
        }
    }
    (value, chosen)
}

/// Condition 39: the absolute row sums must converge to the summed
/// absolute column limits. Needs full stabilization on both sides plus
/// negligible mass in the unprobed edge columns; otherwise inconclusive.
fn eval_abs_row_sums_match<S: Scalar>(
    rows: &[Vec<S>],
    code_label: &str,
    probe: &Probe,
) -> ConditionReport {
    let n_rows = rows.len();
    let n_cols = rows[0].len();
    let trunc = (n_rows, n_cols);
    let r = abs_row_sums(rows);
    let rp = probe_limit_exists(&r, probe);
    if rp.verdict == Verdict::Violated {
        return ConditionReport::new(code_label, Verdict::Violated, rp.evidence, probe, trunc);
    }
    let upto = probeable_indices(n_rows, n_cols, probe.window);
    let mut col_limits = Vec::with_capacity(upto);
    let mut all_stable = rp.verdict == Verdict::Satisfied;
    for k in 0..upto {
        let cp = probe_limit_exists(&column(&rows[k..], k), probe);
        if cp.verdict != Verdict::Satisfied {
            all_stable = false;
        }
        col_limits.push((k, cp.evidence.limit.unwrap_or(f64::NAN)));
    }
    // mass hiding in the unprobed columns, measured over the last window
    let tail_mass: f64 = (upto..n_cols)
        .map(|k| {
            rows[n_rows - probe.window..]
                .iter()
                .fold(0.0f64, |m, row| m.max(row[k].to_f64_lossy().abs()))
        })
        .sum();
    let target: f64 = col_limits.iter().map(|(_, v)| v.abs()).sum();
    let limit = rp.evidence.limit.unwrap_or(f64::NAN);
    let tol = probe.tolerance * (upto.max(1) as f64);
    let verdict = if all_stable && tail_mass < probe.tolerance && (limit - target).abs() < tol {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    let evidence = Evidence {
        sup: rp.evidence.sup,
        limit: Some(limit),
        column_limits: Some(col_limits),
        oscillation: rp.evidence.oscillation,
        window_maxima: rp.evidence.window_maxima,
        witness: None,
        note: (tail_mass >= probe.tolerance)
            .then(|| format!("unprobed edge columns hold mass {tail_mass:.3e}")),
    };
    ConditionReport::new(code_label, verdict, evidence, probe, trunc)
}

/// Evaluates one numbered condition on a matrix truncation.
pub fn cond_predicate<S: Scalar>(
    a: &InfMatrix<S>,
    code: u8,
    probe: &Probe,
) -> Result<ConditionReport> {
    let id = ConditionId::from_code(code)?;
    probe.require_len(a.rows())?;
    probe.require_len(a.cols())?;
    Ok(eval_condition(a.entry_rows(), id, &code.to_string(), probe))
}

/// The weight sequence of the pairing rewrite at a column boundary:
/// `w_j = (1/u_j) * sum_{k=j..boundary} a_k d_{k-j}(-α)` for `j <= boundary`.
pub fn pairing_weights<S: Scalar>(
    a: &[S],
    alpha: &S,
    u: &WeightSeq<S>,
    boundary: usize,
) -> Result<Vec<S>> {
    if a.len() <= boundary {
        return Err(Error::TruncationTooSmall {
            needed: boundary + 1,
            got: a.len(),
        });
    }
    u.require_len(boundary + 1)?;
    let d = coeff_table(&alpha.clone().neg(), boundary + 1);
    // the column-tail sums are a convolution against the reversed prefix
    let rev: Vec<S> = a[..=boundary].iter().rev().cloned().collect();
    let conv = S::convolve_prefix(d.entries(), &rev);
    let w = conv
        .into_iter()
        .rev()
        .enumerate()
        .map(|(j, v)| v / u.get(j).clone())
        .collect();
    Ok(w)
}

/// The sequence `t_k = a_k * sum_{i=0..k} d_i(-α) / u_{k-i}` used in the
/// dual description.
pub fn dual_weights<S: Scalar>(a: &[S], alpha: &S, u: &WeightSeq<S>, n: usize) -> Result<Seq<S>> {
    if a.len() < n {
        return Err(Error::TruncationTooSmall {
            needed: n,
            got: a.len(),
        });
    }
    u.require_len(n)?;
    let d = coeff_table(&alpha.clone().neg(), n);
    let mut out = Vec::with_capacity(n);
    for (k, ak) in a.iter().take(n).enumerate() {
        if ak.is_zero() {
            out.push(S::zero());
            continue;
        }
        let mut acc = S::zero();
        for i in 0..=k {
            let c = d.get(i);
            if c.is_zero() {
                continue;
            }
            acc = acc + c.clone() / u.get(k - i).clone();
        }
        out.push(ak.clone() * acc);
    }
    Ok(Seq::new(out))
}

/// The summation-by-parts triangle of the pairing against `a`: applied to
/// `y = transform(x)` its row `n` yields `sum_{k<=n} a_k x_k` exactly.
/// Row `n` differences the boundary-`n` weights; the diagonal entry is
/// `a_n / u_n`.
pub fn pairing_matrix<S: Scalar>(
    a: &[S],
    alpha: &S,
    u: &WeightSeq<S>,
    n: usize,
) -> Result<TriangleMatrix<S>> {
    if a.len() < n {
        return Err(Error::TruncationTooSmall {
            needed: n,
            got: a.len(),
        });
    }
    u.require_len(n)?;
    let d = coeff_table(&alpha.clone().neg(), n);
    let mut w: Vec<S> = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    for m in 0..n {
        // extend the boundary from m-1 to m
        if !a[m].is_zero() {
            for (j, wj) in w.iter_mut().enumerate() {
                let c = d.get(m - j);
                if c.is_zero() {
                    continue;
                }
                *wj = wj.clone() + a[m].clone() * c.clone() / u.get(j).clone();
            }
        }
        w.push(a[m].clone() / u.get(m).clone());
        let mut row = Vec::with_capacity(m + 1);
        for k in 0..m {
            row.push(w[k].clone() - w[k + 1].clone());
        }
        row.push(w[m].clone());
        rows.push(row);
    }
    TriangleMatrix::from_rows(rows)
}

fn triangle_to_dense<S: Scalar>(t: &TriangleMatrix<S>) -> Vec<Vec<S>> {
    let n = t.dim();
    (0..n)
        .map(|r| (0..n).map(|k| t.get(r, k)).collect())
        .collect()
}

/// Membership of `a` in the dual of a domain space: the pairing matrix
/// must map null (resp. convergent) sequences to convergent ones, i.e.
/// its column limits exist and its row absolute sums stay bounded, plus
/// a row-sum limit for the convergent source.
pub fn beta_dual_test<S: Scalar>(
    a: &Seq<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    space: SpaceTag,
    probe: &Probe,
) -> Result<ClassVerdict> {
    let n = a.len();
    probe.require_len(n)?;
    let t = pairing_matrix(a.entries(), alpha, u, n)?;
    let dense = triangle_to_dense(&t);
    let mut conditions = vec![
        eval_condition(&dense, ConditionId::ColumnLimitsExist, "25", probe),
        eval_condition(&dense, ConditionId::SupRowAbsSums, "26", probe),
    ];
    if space == SpaceTag::Convergent {
        conditions.push(eval_condition(
            &dense,
            ConditionId::RowSumLimitExists,
            "22",
            probe,
        ));
    }
    Ok(ClassVerdict::aggregate(
        format!("{}-domain-dual", space.label()),
        "cs",
        None,
        conditions,
        (n, n),
    ))
}

/// The matrix `A` rewritten in transform coordinates: row `n` holds the
/// differences of the boundary-`(M-1)` pairing weights of row `n` of `A`.
/// Truncates to `N x (M-1)`.
pub fn associated_matrix<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
) -> Result<InfMatrix<S>> {
    let m = a.cols();
    if m < 2 {
        return Err(Error::TruncationTooSmall { needed: 2, got: m });
    }
    let mut rows = Vec::with_capacity(a.rows());
    for n in 0..a.rows() {
        let w = pairing_weights(a.row(n), alpha, u, m - 1)?;
        let row = (0..m - 1)
            .map(|k| w[k].clone() - w[k + 1].clone())
            .collect();
        rows.push(row);
    }
    InfMatrix::new(rows, None)
}

/// The domain triangle composed onto `A`. Classes into the domain spaces
/// are decided by the classical class of this matrix.
pub fn composed_matrix<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
) -> Result<InfMatrix<S>> {
    let t = domain_triangle(alpha, u, a.rows())?;
    let mut rows = Vec::with_capacity(a.rows());
    for n in 0..a.rows() {
        let mut row = vec![S::zero(); a.cols()];
        for j in 0..=n {
            let tau = t.get(n, j);
            if tau.is_zero() {
                continue;
            }
            for (rk, v) in row.iter_mut().zip(a.row(j)) {
                if v.is_zero() {
                    continue;
                }
                *rk = rk.clone() + tau.clone() * v.clone();
            }
        }
        rows.push(row);
    }
    InfMatrix::new(rows, None)
}

/// The pairing triangle of row `n` of `A`: its rows reproduce the partial
/// sums of `(Ax)_n`, so its classical class against a convergent target
/// decides whether row `n` pairs with every member of the domain space.
pub fn row_pairing_matrix<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    n: usize,
) -> Result<TriangleMatrix<S>> {
    if n >= a.rows() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: a.rows(),
        });
    }
    pairing_matrix(a.row(n), alpha, u, a.cols())
}

/// Condition 28: every row of `A` must pair convergently with the domain
/// space, i.e. each row's pairing triangle lies in the class
/// (source : convergent).
fn eval_row_pairing_condition<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    source: SpaceTag,
    probe: &Probe,
) -> Result<ConditionReport> {
    let mut verdict = Verdict::Satisfied;
    let mut evidence = Evidence::default();
    // rows near the truncation edge pair against data that ends while
    // still accumulating; they are skipped like edge columns in the
    // per-column limit conditions
    let upto = probeable_indices(a.cols(), a.rows(), probe.window);
    for n in 0..upto {
        let t = row_pairing_matrix(a, alpha, u, n)?;
        let dense = triangle_to_dense(&t);
        let mut reports = vec![
            eval_condition(&dense, ConditionId::ColumnLimitsExist, "32", probe),
            eval_condition(&dense, ConditionId::SupRowAbsSums, "31", probe),
        ];
        if source == SpaceTag::Convergent {
            reports.push(eval_condition(
                &dense,
                ConditionId::RowSumLimitExists,
                "34",
                probe,
            ));
        }
        let v = reports
            .iter()
            .fold(Verdict::Satisfied, |acc, r| acc.and(r.verdict));
        if v != Verdict::Satisfied && evidence.note.is_none() {
            evidence.note = Some(format!("row {n} pairing is {}", v.label()));
            if v == Verdict::Violated {
                let inner = reports
                    .iter()
                    .find_map(|r| r.evidence.witness.clone())
                    .map_or(f64::NAN, |w| w.value);
                evidence.witness = Some(Witness {
                    row: Some(n),
                    col: None,
                    value: inner,
                });
            }
        }
        verdict = verdict.and(v);
    }
    if upto == 0 {
        verdict = Verdict::Inconclusive;
    }
    if evidence.note.is_none() {
        evidence.note = Some(format!("row pairings 0..{upto} satisfied"));
    }
    if upto < a.rows() {
        let n_rows = a.rows();
        let extra = format!("rows {upto}..{n_rows} lack post-onset data");
        evidence.note = Some(match evidence.note.take() {
            Some(n) => format!("{n}; {extra}"),
            None => extra,
        });
    }
    Ok(ConditionReport::new(
        "28",
        verdict,
        evidence,
        probe,
        (a.rows(), a.cols()),
    ))
}

fn from_domain_condition_set(source: SpaceTag, target: BaseSpace) -> Vec<ConditionId> {
    use ConditionId::*;
    match (source, target) {
        (_, BaseSpace::Bounded) => vec![SupRowAbsSums],
        (SpaceTag::Null, BaseSpace::Convergent) => vec![SupRowAbsSums, ColumnLimitsExist],
        (SpaceTag::Null, BaseSpace::Null) => vec![SupRowAbsSums, RowEntriesVanish],
        (SpaceTag::Convergent, BaseSpace::Convergent) => {
            vec![SupRowAbsSums, ColumnLimitsExist, RowSumLimitExists]
        }
        (SpaceTag::Convergent, BaseSpace::Null) => {
            vec![SupRowAbsSums, RowEntriesVanish, RowSumsVanish]
        }
        (_, BaseSpace::AbsSummable) => vec![SubsetSupFinite],
    }
}

/// Class test for `A` mapping a domain space into a classical space.
/// The numbered conditions run on the associated matrix; the row-pairing
/// condition (28) runs on `A` itself.
pub fn classify_from_domain<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    source: SpaceTag,
    target: BaseSpace,
    probe: &Probe,
) -> Result<ClassVerdict> {
    let tilde = associated_matrix(a, alpha, u)?;
    probe.require_len(tilde.rows())?;
    probe.require_len(tilde.cols())?;
    let mut conditions: Vec<ConditionReport> = from_domain_condition_set(source, target)
        .into_iter()
        .map(|id| eval_condition(tilde.entry_rows(), id, &id.code().to_string(), probe))
        .collect();
    conditions.push(eval_row_pairing_condition(a, alpha, u, source, probe)?);
    Ok(ClassVerdict::aggregate(
        format!("{}-domain", source.label()),
        target.label(),
        None,
        conditions,
        (a.rows(), a.cols()),
    ))
}

/// One published characterization of a class into a domain space.
///
/// Two distinct condition sets are on record for the pair
/// (convergent : null-domain); they are exposed as separate rules and no
/// preference between them is baked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntoDomainRule {
    BoundedToNull,
    ConvergentToNullA,
    NullToNull,
    ConvergentToNullB,
    BoundedToConvergent,
    ConvergentToConvergent,
    NullToConvergent,
    AbsSummableToConvergent,
}

impl IntoDomainRule {
    pub fn id(self) -> &'static str {
        match self {
            IntoDomainRule::BoundedToNull => "linf-to-c0",
            IntoDomainRule::ConvergentToNullA => "c-to-c0-a",
            IntoDomainRule::NullToNull => "c0-to-c0",
            IntoDomainRule::ConvergentToNullB => "c-to-c0-b",
            IntoDomainRule::BoundedToConvergent => "linf-to-c",
            IntoDomainRule::ConvergentToConvergent => "c-to-c",
            IntoDomainRule::NullToConvergent => "c0-to-c",
            IntoDomainRule::AbsSummableToConvergent => "l1-to-c",
        }
    }

    pub fn source(self) -> BaseSpace {
        match self {
            IntoDomainRule::BoundedToNull | IntoDomainRule::BoundedToConvergent => {
                BaseSpace::Bounded
            }
            IntoDomainRule::ConvergentToNullA
            | IntoDomainRule::ConvergentToNullB
            | IntoDomainRule::ConvergentToConvergent => BaseSpace::Convergent,
            IntoDomainRule::NullToNull | IntoDomainRule::NullToConvergent => BaseSpace::Null,
            IntoDomainRule::AbsSummableToConvergent => BaseSpace::AbsSummable,
        }
    }

    pub fn target(self) -> SpaceTag {
        match self {
            IntoDomainRule::BoundedToNull
            | IntoDomainRule::ConvergentToNullA
            | IntoDomainRule::NullToNull
            | IntoDomainRule::ConvergentToNullB => SpaceTag::Null,
            _ => SpaceTag::Convergent,
        }
    }

    /// Source space the rule's condition set actually characterizes, used
    /// for drawing cross-check samples. For the B variant of the
    /// (convergent : null-domain) pair this is the absolutely summable
    /// space: its published source label is refuted by a concrete
    /// counterexample (the identity matrix satisfies the conditions yet
    /// maps constants to the unbounded running coefficient sums), while
    /// the conditions are exactly the classical absolutely-summable-source
    /// test.
    pub fn sample_source(self) -> BaseSpace {
        match self {
            IntoDomainRule::ConvergentToNullB => BaseSpace::AbsSummable,
            other => other.source(),
        }
    }

    pub fn conditions(self) -> &'static [ConditionId] {
        use ConditionId::*;
        match self {
            IntoDomainRule::BoundedToNull => &[AbsRowSumsVanish],
            IntoDomainRule::ConvergentToNullA => &[SupRowAbsSums, RowEntriesVanish, RowSumsVanish],
            IntoDomainRule::NullToNull => &[SupRowAbsSums, RowEntriesVanish],
            IntoDomainRule::ConvergentToNullB => &[RowEntriesVanish, EntriesBounded],
            IntoDomainRule::BoundedToConvergent => {
                &[ColumnLimitsExist, AbsRowSumsMatchColumnLimits]
            }
            IntoDomainRule::ConvergentToConvergent => {
                &[SupRowAbsSums, ColumnLimitsExist, RowSumLimitExists]
            }
            IntoDomainRule::NullToConvergent => &[SupRowAbsSums, ColumnLimitsExist],
            IntoDomainRule::AbsSummableToConvergent => &[ColumnLimitsExist, EntriesBounded],
        }
    }

    pub fn all() -> [IntoDomainRule; 8] {
        [
            IntoDomainRule::BoundedToNull,
            IntoDomainRule::ConvergentToNullA,
            IntoDomainRule::NullToNull,
            IntoDomainRule::ConvergentToNullB,
            IntoDomainRule::BoundedToConvergent,
            IntoDomainRule::ConvergentToConvergent,
            IntoDomainRule::NullToConvergent,
            IntoDomainRule::AbsSummableToConvergent,
        ]
    }

    /// Every rule characterizing the given pair; empty when none is on
    /// record (absolutely summable sources are characterized into the
    /// convergent domain only).
    pub fn for_pair(source: BaseSpace, target: SpaceTag) -> Vec<IntoDomainRule> {
        IntoDomainRule::all()
            .into_iter()
            .filter(|r| r.source() == source && r.target() == target)
            .collect()
    }
}

/// Class test for `A` mapping a classical space into a domain space: the
/// rule's conditions run on the composed matrix.
pub fn classify_into_domain<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    rule: IntoDomainRule,
    probe: &Probe,
) -> Result<ClassVerdict> {
    let b = composed_matrix(a, alpha, u)?;
    probe.require_len(b.rows())?;
    probe.require_len(b.cols())?;
    let conditions: Vec<ConditionReport> = rule
        .conditions()
        .iter()
        .map(|id| eval_condition(b.entry_rows(), *id, &id.code().to_string(), probe))
        .collect();
    Ok(ClassVerdict::aggregate(
        rule.source().label(),
        format!("{}-domain", rule.target().label()),
        Some(rule.id().to_string()),
        conditions,
        (a.rows(), a.cols()),
    ))
}

/// Probes a plain float sequence for membership in a classical space.
pub fn space_probe(xs: &[f64], space: BaseSpace, probe: &Probe) -> Result<ConditionReport> {
    probe.require_len(xs.len())?;
    let (label, p) = match space {
        BaseSpace::Null => ("membership-c0", probe_limit_equals(xs, 0.0, probe)),
        BaseSpace::Convergent => ("membership-c", probe_limit_exists(xs, probe)),
        BaseSpace::Bounded => ("membership-linf", probe_sup_finite(xs, probe)),
        BaseSpace::AbsSummable => {
            let mut acc = 0.0f64;
            let partial: Vec<f64> = xs
                .iter()
                .map(|v| {
                    acc += v.abs();
                    acc
                })
                .collect();
            ("membership-l1", probe_limit_exists(&partial, probe))
        }
    };
    Ok(ConditionReport::new(
        label,
        p.verdict,
        p.evidence,
        probe,
        (xs.len(), 1),
    ))
}

/// Deterministic members of a classical space drawn from the built-in
/// sequence families, with seeded scale and parameter variation.
pub fn sample_members<S: Scalar>(
    space: BaseSpace,
    count: usize,
    len: usize,
    seed: u64,
) -> Vec<(String, Seq<S>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scales: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 2), (5, 4)];
    let ratios: [(i64, i64); 6] = [(1, 2), (-1, 2), (1, 3), (2, 3), (-3, 4), (3, 4)];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let (sn, sd) = scales[rng.gen_range(0..scales.len())];
        let scale = S::from_ratio(sn, sd);
        let (rn, rd) = ratios[rng.gen_range(0..ratios.len())];
        let (desc, seq): (String, Seq<S>) = match space {
            BaseSpace::Null => match i % 4 {
                0 => {
                    let j = rng.gen_range(0..len.min(8));
                    (format!("unit:{j}"), make_family(&Family::Unit(j), len))
                }
                1 => (
                    format!("geometric:{rn}/{rd}"),
                    make_family(
                        &Family::Geometric(num_rational::Rational64::new(rn, rd)),
                        len,
                    ),
                ),
                2 => ("harmonic".into(), make_family(&Family::Harmonic, len)),
                _ => ("zero".into(), Seq::zeros(len)),
            },
            BaseSpace::Convergent => match i % 3 {
                0 => (
                    format!("constant:{sn}/{sd}"),
                    make_family(
                        &Family::Constant(num_rational::Rational64::new(sn, sd)),
                        len,
                    ),
                ),
                1 => {
                    let c: Seq<S> = make_family(
                        &Family::Constant(num_rational::Rational64::new(sn, sd)),
                        len,
                    );
                    let g: Seq<S> = make_family(
                        &Family::Geometric(num_rational::Rational64::new(rn, rd)),
                        len,
                    );
                    (
                        format!("constant:{sn}/{sd} + geometric:{rn}/{rd}"),
                        c.add(&g).expect("equal lengths"),
                    )
                }
                _ => ("harmonic".into(), make_family(&Family::Harmonic, len)),
            },
            BaseSpace::Bounded => match i % 3 {
                0 => (
                    "alternating".into(),
                    make_family(
                        &Family::Geometric(num_rational::Rational64::new(-1, 1)),
                        len,
                    ),
                ),
                1 => {
                    let s = rng.gen_range(0..1u64 << 32);
                    (
                        format!("random:-1,1,{s}"),
                        make_family(
                            &Family::Random {
                                lo: num_rational::Rational64::new(-1, 1),
                                hi: num_rational::Rational64::new(1, 1),
                                seed: Some(s),
                            },
                            len,
                        ),
                    )
                }
                _ => (
                    format!("constant:{sn}/{sd}"),
                    make_family(
                        &Family::Constant(num_rational::Rational64::new(sn, sd)),
                        len,
                    ),
                ),
            },
            BaseSpace::AbsSummable => match i % 3 {
                0 => {
                    let j = rng.gen_range(0..len.min(8));
                    (format!("unit:{j}"), make_family(&Family::Unit(j), len))
                }
                1 => (
                    format!("geometric:{rn}/{rd}"),
                    make_family(
                        &Family::Geometric(num_rational::Rational64::new(rn, rd)),
                        len,
                    ),
                ),
                _ => ("zero".into(), Seq::zeros(len)),
            },
        };
        out.push((format!("{scale} * ({desc})"), seq.scale(&scale)));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassDirection {
    FromDomain { source: SpaceTag, target: BaseSpace },
    IntoDomain { rule: IntoDomainRule },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleOutcome {
    pub description: String,
    pub image_verdict: Verdict,
}

/// Result of checking a class verdict against sampled members.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub class: ClassVerdict,
    pub samples: Vec<SampleOutcome>,
    /// Images certified outside the target space.
    pub violations: usize,
    pub inconclusive: usize,
    /// False when the class verdict is satisfied yet some image is
    /// certified outside the target.
    pub consistent: bool,
}

/// Draws members of the source space, pushes them through `A`, and probes
/// every image against the target space. A certified non-member image
/// contradicts a satisfied class verdict.
pub fn oracle_crosscheck<S: Scalar>(
    a: &InfMatrix<S>,
    alpha: &S,
    u: &WeightSeq<S>,
    direction: ClassDirection,
    samples: usize,
    probe: &Probe,
    seed: u64,
) -> Result<OracleReport> {
    let class = match &direction {
        ClassDirection::FromDomain { source, target } => {
            classify_from_domain(a, alpha, u, *source, *target, probe)?
        }
        ClassDirection::IntoDomain { rule } => classify_into_domain(a, alpha, u, *rule, probe)?,
    };
    let mut outcomes = Vec::with_capacity(samples);
    let mut violations = 0usize;
    let mut inconclusive = 0usize;
    for (description, verdict) in match &direction {
        ClassDirection::FromDomain { source, target } => {
            let base = match source {
                SpaceTag::Null => BaseSpace::Null,
                SpaceTag::Convergent => BaseSpace::Convergent,
            };
            let drawn: Vec<(String, Seq<S>)> = sample_members(base, samples, a.cols(), seed);
            let mut res = Vec::with_capacity(samples);
            for (desc, y) in drawn {
                // domain members are preimages of the drawn sequences
                let x = inverse_transform(&y, alpha, u)?;
                let image = a.mul_vec(x.entries())?;
                let report = space_probe(&to_f64_vec(&image), *target, probe)?;
                res.push((desc, report.verdict));
            }
            res
        }
        ClassDirection::IntoDomain { rule } => {
            let drawn: Vec<(String, Seq<S>)> =
                sample_members(rule.sample_source(), samples, a.cols(), seed);
            let mprobe = MembershipProbe::new(rule.target(), probe.window, probe.tolerance)?;
            let mut res = Vec::with_capacity(samples);
            for (desc, z) in drawn {
                let image = a.mul_vec(z.entries())?;
                let report = membership(&Seq::new(image), alpha, u, &mprobe)?;
                res.push((desc, report.verdict));
            }
            res
        }
    } {
        match verdict {
            Verdict::Violated => violations += 1,
            Verdict::Inconclusive => inconclusive += 1,
            Verdict::Satisfied => {}
        }
        outcomes.push(SampleOutcome {
            description,
            image_verdict: verdict,
        });
    }
    let consistent = !(class.verdict == Verdict::Satisfied && violations > 0);
    Ok(OracleReport {
        class,
        samples: outcomes,
        violations,
        inconclusive,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type RMat = InfMatrix<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn ones(n: usize) -> WeightSeq<BigRational> {
        WeightSeq::ones(n)
    }

    fn probe() -> Probe {
        Probe::new(8, 1e-6).unwrap()
    }

    #[test]
    fn dual_weights_examples() {
        // order zero, unit weights, all-ones a: every weight is one
        let a = vec![q(1, 1); 8];
        let t = dual_weights(&a, &q(0, 1), &ones(8), 8).unwrap();
        assert!(t.entries().iter().all(|v| *v == q(1, 1)));

        // half order: running sums of the inverse coefficients
        let t = dual_weights(&a, &q(1, 2), &ones(8), 8).unwrap();
        assert_eq!(t.entries()[0], q(1, 1));
        assert_eq!(t.entries()[1], q(3, 2));
        assert_eq!(t.entries()[2], q(15, 8));

        // singly supported a scales a single entry
        let e0: Vec<BigRational> = {
            let mut v = vec![q(0, 1); 6];
            v[0] = q(3, 1);
            v
        };
        let u = WeightSeq::new(vec![q(2, 1); 6]).unwrap();
        let t = dual_weights(&e0, &q(1, 2), &u, 6).unwrap();
        assert_eq!(t.entries()[0], q(3, 2));
        assert!(t.entries()[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn pairing_matrix_identity_case() {
        // order zero, unit weights, all-ones a: the pairing matrix is the
        // identity
        let a = vec![q(1, 1); 6];
        let t = pairing_matrix(&a, &q(0, 1), &ones(6), 6).unwrap();
        assert_eq!(t, TriangleMatrix::identity(6));

        // zero a gives the zero triangle
        let z = vec![q(0, 1); 6];
        let t = pairing_matrix(&z, &q(1, 2), &ones(6), 6).unwrap();
        for n in 0..6 {
            for k in 0..=n {
                assert!(t.get(n, k).is_zero());
            }
        }
        assert!(!t.is_triangle());
    }

    #[test]
    fn pairing_matrix_reproduces_partial_sums() {
        use crate::domain::transform;
        let alpha = q(1, 2);
        let u = WeightSeq::new(
            make_family::<BigRational>(&Family::parse("random:1,2,31").unwrap(), 16).into_entries(),
        )
        .unwrap();
        let a: Seq<BigRational> = make_family(&Family::parse("random:-3,3,32").unwrap(), 16);
        let x: Seq<BigRational> = make_family(&Family::parse("random:-2,2,33").unwrap(), 16);
        let y = transform(&x, &alpha, &u).unwrap();
        let t = pairing_matrix(a.entries(), &alpha, &u, 16).unwrap();
        let ty = t.mul_vec(y.entries()).unwrap();
        let mut acc = q(0, 1);
        for n in 0..16 {
            acc += a.entries()[n].clone() * x.entries()[n].clone();
            assert_eq!(ty[n], acc, "partial sum mismatch at {n}");
        }
    }

    #[test]
    fn beta_dual_examples() {
        // finitely supported a: satisfied for both source spaces
        let mut a = vec![q(0, 1); 64];
        a[0] = q(1, 1);
        a[3] = q(-2, 1);
        let a = Seq::new(a);
        for space in [SpaceTag::Null, SpaceTag::Convergent] {
            let v = beta_dual_test(&a, &q(1, 2), &ones(64), space, &probe()).unwrap();
            assert_eq!(v.verdict, Verdict::Satisfied, "space {:?}", space);
        }

        // all-ones a with order zero: pairing matrix is the identity
        let a = Seq::new(vec![q(1, 1); 64]);
        let v = beta_dual_test(&a, &q(0, 1), &ones(64), SpaceTag::Null, &probe()).unwrap();
        assert_eq!(v.verdict, Verdict::Satisfied);

        // a_k = k with order zero: row absolute sums grow without bound
        let a = Seq::new((0..64).map(|k| q(k, 1)).collect());
        let v = beta_dual_test(&a, &q(0, 1), &ones(64), SpaceTag::Null, &probe()).unwrap();
        assert_eq!(v.verdict, Verdict::Violated);
        let sup_cond = v.conditions.iter().find(|c| c.condition == "26").unwrap();
        assert_eq!(sup_cond.verdict, Verdict::Violated);
        assert!(sup_cond.evidence.witness.is_some());
    }

    #[test]
    fn associated_matrix_order_zero_is_row_differences() {
        let a = RMat::from_family(MatrixFamily::CesaroC1, 6, 6);
        let tilde = associated_matrix(&a, &q(0, 1), &ones(6)).unwrap();
        assert_eq!(tilde.rows(), 6);
        assert_eq!(tilde.cols(), 5);
        for n in 0..6 {
            for k in 0..5 {
                let want = a.get(n, k).clone() - a.get(n, k + 1).clone();
                assert_eq!(*tilde.get(n, k), want);
            }
        }
        let z = RMat::from_family(MatrixFamily::Zero, 6, 6);
        let tilde = associated_matrix(&z, &q(1, 2), &ones(6)).unwrap();
        assert!(tilde
            .entry_rows()
            .iter()
            .all(|r| r.iter().all(|v| v.is_zero())));
    }

    #[test]
    fn associated_rows_match_row_pairing_rows() {
        let a = RMat::from_family(MatrixFamily::CesaroC1, 8, 8);
        let alpha = q(1, 3);
        let tilde = associated_matrix(&a, &alpha, &ones(8)).unwrap();
        for n in 0..8 {
            let t = row_pairing_matrix(&a, &alpha, &ones(8), n).unwrap();
            // last row of the row-pairing triangle carries the full-boundary
            // differences
            let last = t.row(7);
            for k in 0..7 {
                assert_eq!(*tilde.get(n, k), last[k]);
            }
        }
    }

    #[test]
    fn composed_matrix_examples() {
        // order one, unit weights: the triangle is the identity
        let a = RMat::from_family(MatrixFamily::CesaroC1, 6, 6);
        let b = composed_matrix(&a, &q(1, 1), &ones(6)).unwrap();
        assert_eq!(b.entry_rows(), a.entry_rows());

        // order zero: column partial sums
        let id = RMat::from_family(MatrixFamily::Identity, 5, 5);
        let b = composed_matrix(&id, &q(0, 1), &ones(5)).unwrap();
        for n in 0..5 {
            for k in 0..5 {
                let want = if k <= n { q(1, 1) } else { q(0, 1) };
                assert_eq!(*b.get(n, k), want);
            }
        }
    }

    #[test]
    fn composition_associates_with_vectors() {
        let a = RMat::from_family(MatrixFamily::CesaroC1, 12, 12);
        let alpha = q(2, 5);
        let u = ones(12);
        let b = composed_matrix(&a, &alpha, &u).unwrap();
        let z: Seq<BigRational> = make_family(&Family::parse("random:-2,2,44").unwrap(), 12);
        let bz = b.mul_vec(z.entries()).unwrap();
        let az = a.mul_vec(z.entries()).unwrap();
        let t = domain_triangle(&alpha, &u, 12).unwrap();
        assert_eq!(bz, t.mul_vec(&az).unwrap());
    }

    #[test]
    fn row_pairing_matrix_hand_expansion() {
        // order zero, identity matrix, row 2 at size 4
        let id = RMat::from_family(MatrixFamily::Identity, 4, 4);
        let c = row_pairing_matrix(&id, &q(0, 1), &ones(4), 2).unwrap();
        assert_eq!(c.row(0), &[q(0, 1)]);
        assert_eq!(c.row(1), &[q(0, 1), q(0, 1)]);
        assert_eq!(c.row(2), &[q(0, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(c.row(3), &[q(0, 1), q(-1, 1), q(1, 1), q(0, 1)]);
        assert!(row_pairing_matrix(&id, &q(0, 1), &ones(4), 4).is_err());
    }

    #[test]
    fn condition_examples_on_families() {
        let p = probe();

        // Cesaro means: bounded rows, null columns, unit row sums
        let c1 = RMat::from_family(MatrixFamily::CesaroC1, 64, 64);
        let r31 = cond_predicate(&c1, 31, &p).unwrap();
        assert_eq!(r31.verdict, Verdict::Satisfied);
        assert_eq!(r31.evidence.sup, Some(1.0));
        let r32 = cond_predicate(&c1, 32, &p).unwrap();
        assert_eq!(r32.verdict, Verdict::Satisfied);
        let r34 = cond_predicate(&c1, 34, &p).unwrap();
        assert_eq!(r34.verdict, Verdict::Satisfied);
        assert_eq!(r34.evidence.limit, Some(1.0));

        // zero matrix: everything satisfied with zero evidence (16 columns
        // keep the subset condition inside its exhaustive cap)
        let z = RMat::from_family(MatrixFamily::Zero, 48, 16);
        for code in [31u8, 32, 33, 34, 35, 36, 37, 38, 39] {
            let r = cond_predicate(&z, code, &p).unwrap();
            assert_eq!(r.verdict, Verdict::Satisfied, "condition {code}");
        }

        // identity: bounded entries, non-vanishing absolute row sums
        let id = RMat::from_family(MatrixFamily::Identity, 64, 64);
        let r38 = cond_predicate(&id, 38, &p).unwrap();
        assert_eq!(r38.verdict, Verdict::Satisfied);
        assert_eq!(r38.evidence.sup, Some(1.0));
        let r37 = cond_predicate(&id, 37, &p).unwrap();
        assert_eq!(r37.verdict, Verdict::Violated);
        assert!(r37.evidence.witness.is_some());
    }

    #[test]
    fn condition_aliases_and_errors() {
        let p = probe();
        let c1 = RMat::from_family(MatrixFamily::CesaroC1, 64, 64);
        let via_alias = cond_predicate(&c1, 21, &p).unwrap();
        let canonical = cond_predicate(&c1, 31, &p).unwrap();
        assert_eq!(via_alias.verdict, canonical.verdict);
        assert_eq!(via_alias.condition, "21");
        assert!(cond_predicate(&c1, 99, &p).is_err());
        let small = RMat::from_family(MatrixFamily::Identity, 4, 4);
        assert!(cond_predicate(&small, 31, &p).is_err());
    }

    #[test]
    fn subset_condition_exhaustive_and_capped() {
        let p = probe();
        // identity truncation: the extremal subset picks every column,
        // terms stay at one per row, a constant trend
        let id = RMat::from_family(MatrixFamily::Identity, 40, 16);
        let r = cond_predicate(&id, 36, &p).unwrap();
        assert_eq!(r.evidence.sup, Some(16.0));
        assert_eq!(r.verdict, Verdict::Satisfied);

        // above the cap: inconclusive with a greedy lower bound
        let wide = RMat::from_family(MatrixFamily::Identity, 40, 24);
        let r = cond_predicate(&wide, 36, &p).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.evidence.sup.unwrap() >= 24.0 - 1e-9);
        assert!(r.evidence.note.as_ref().unwrap().contains("greedy"));
    }

    #[test]
    fn classify_from_domain_examples() {
        let p = probe();
        let alpha = q(1, 2);
        let u = ones(64);

        // the domain triangle itself maps its space onto the null space
        let t = domain_triangle(&alpha, &u, 48).unwrap();
        let dense: Vec<Vec<BigRational>> = (0..48)
            .map(|n| (0..48).map(|k| t.get(n, k)).collect())
            .collect();
        let a = InfMatrix::new(dense, None).unwrap();
        let v = classify_from_domain(&a, &alpha, &u, SpaceTag::Null, BaseSpace::Null, &p).unwrap();
        assert_eq!(v.verdict, Verdict::Satisfied);

        // zero matrix: satisfied for every target
        let z = RMat::from_family(MatrixFamily::Zero, 48, 48);
        for target in [BaseSpace::Bounded, BaseSpace::Convergent, BaseSpace::Null] {
            let v = classify_from_domain(&z, &alpha, &u, SpaceTag::Null, target, &p).unwrap();
            assert_eq!(v.verdict, Verdict::Satisfied, "target {target:?}");
        }

        // constant rows growing with n: certified out of the bounded class
        let grow: Vec<Vec<BigRational>> = (0..48).map(|n| vec![q(n as i64, 1); 48]).collect();
        let a = InfMatrix::new(grow, None).unwrap();
        let v =
            classify_from_domain(&a, &alpha, &u, SpaceTag::Null, BaseSpace::Bounded, &p).unwrap();
        assert_eq!(v.verdict, Verdict::Violated);
        let c31 = v.conditions.iter().find(|c| c.condition == "31").unwrap();
        assert!(c31.evidence.witness.is_some());
    }

    #[test]
    fn classify_into_domain_examples() {
        let p = probe();
        let u = ones(64);

        // zero matrix: satisfied under every rule
        let z = RMat::from_family(MatrixFamily::Zero, 48, 48);
        for rule in IntoDomainRule::all() {
            let v = classify_into_domain(&z, &q(1, 2), &u, rule, &p).unwrap();
            assert_eq!(v.verdict, Verdict::Satisfied, "rule {}", rule.id());
        }

        // identity into the null domain from bounded sources, order zero:
        // composed rows are ones, absolute row sums grow
        let id = RMat::from_family(MatrixFamily::Identity, 48, 48);
        let v = classify_into_domain(&id, &q(0, 1), &u, IntoDomainRule::BoundedToNull, &p).unwrap();
        assert_eq!(v.verdict, Verdict::Violated);
        let c37 = v.conditions.iter().find(|c| c.condition == "37").unwrap();
        assert!(c37.evidence.witness.is_some());

        // both rules for the ambiguous pair are exposed
        let rules = IntoDomainRule::for_pair(BaseSpace::Convergent, SpaceTag::Null);
        assert_eq!(rules.len(), 2);
        let rules = IntoDomainRule::for_pair(BaseSpace::AbsSummable, SpaceTag::Null);
        assert!(rules.is_empty());
    }

    #[test]
    fn space_probe_examples() {
        let p = probe();
        let zeros = vec![0.0; 32];
        assert_eq!(
            space_probe(&zeros, BaseSpace::Null, &p).unwrap().verdict,
            Verdict::Satisfied
        );
        let lin: Vec<f64> = (0..48).map(|k| k as f64).collect();
        assert_eq!(
            space_probe(&lin, BaseSpace::Bounded, &p).unwrap().verdict,
            Verdict::Violated
        );
        let ones_v = vec![1.0; 48];
        assert_eq!(
            space_probe(&ones_v, BaseSpace::AbsSummable, &p)
                .unwrap()
                .verdict,
            Verdict::Violated
        );
        let geo: Vec<f64> = (0..48).map(|k| 0.5f64.powi(k)).collect();
        assert_eq!(
            space_probe(&geo, BaseSpace::AbsSummable, &p)
                .unwrap()
                .verdict,
            Verdict::Satisfied
        );
    }

    #[test]
    fn crosscheck_zero_matrix_consistent() {
        let p = probe();
        let z = RMat::from_family(MatrixFamily::Zero, 48, 48);
        let r = oracle_crosscheck(
            &z,
            &q(1, 2),
            &ones(64),
            ClassDirection::FromDomain {
                source: SpaceTag::Null,
                target: BaseSpace::Null,
            },
            12,
            &p,
            9,
        )
        .unwrap();
        assert_eq!(r.class.verdict, Verdict::Satisfied);
        assert_eq!(r.violations, 0);
        assert!(r.consistent);
        assert_eq!(r.samples.len(), 12);
    }

    #[test]
    fn sample_members_land_in_their_space() {
        let p = Probe::new(8, 0.05).unwrap();
        for space in [
            BaseSpace::Null,
            BaseSpace::Convergent,
            BaseSpace::Bounded,
            BaseSpace::AbsSummable,
        ] {
            for (desc, x) in sample_members::<BigRational>(space, 12, 64, 3) {
                let r = space_probe(&to_f64_vec(x.entries()), space, &p).unwrap();
                assert_ne!(
                    r.verdict,
                    Verdict::Violated,
                    "sample {desc} certified outside {space:?}"
                );
            }
        }
    }
}
