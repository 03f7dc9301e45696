//! Three-valued verdicts with numeric evidence.
//!
//! Limit and sup conditions quantify over infinite tails; a finite
//! truncation can only ever report evidence. The contract used everywhere:
//!
//! * `Satisfied` — the windowed evidence is consistent with the condition
//!   under the given window/tolerance parameters.
//! * `Violated` — a concrete witness is recorded: either a certified
//!   growth trend (window maxima strictly increasing with non-decreasing
//!   increments across the whole truncation) or a value that has
//!   stabilized away from its required target.
//! * `Inconclusive` — anything else. Verdicts degrade to inconclusive,
//!   never to a wrong answer.
//!
//! Windows are aligned to the tail: the last `W * floor(len/W)` entries
//! are split into windows of exactly `W`. Trend tests look at the last
//! three windows; growth certification looks at all of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// CLI exit code: 0 satisfied, 1 violated, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Satisfied => 0,
            Verdict::Violated => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// Conjunction: any violation wins, else any inconclusive, else
    /// satisfied.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Satisfied,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Location and value backing a `Violated` verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    pub value: f64,
}

/// Numeric summary attached to every condition verdict.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    /// Largest magnitude seen; a lower bound of the true sup.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup: Option<f64>,
    /// Last-window limit estimate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    /// Per-column limit estimates `(k, estimate)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_limits: Option<Vec<(usize, f64)>>,
    /// Oscillation (max - min) over the final window.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oscillation: Option<f64>,
    /// Max |value| per trailing window, oldest first.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub window_maxima: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Verdict for one summability condition on one truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// Condition code, e.g. `"31"`, `"28"`, `"membership-c0"`.
    pub condition: String,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub window: usize,
    pub tolerance: f64,
    /// Truncation the evidence was computed on (rows, cols); cols is 1
    /// for plain sequences.
    pub truncation: (usize, usize),
}

impl ConditionReport {
    pub fn new(
        condition: impl Into<String>,
        verdict: Verdict,
        evidence: Evidence,
        probe: &Probe,
        truncation: (usize, usize),
    ) -> Self {
        ConditionReport {
            condition: condition.into(),
            verdict,
            evidence,
            window: probe.window,
            tolerance: probe.tolerance,
            truncation,
        }
    }
}

/// Aggregated verdict for one matrix class or one dual test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub source: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    pub verdict: Verdict,
    pub conditions: Vec<ConditionReport>,
    pub truncation: (usize, usize),
}

impl ClassVerdict {
    pub fn aggregate(
        source: impl Into<String>,
        target: impl Into<String>,
        rule: Option<String>,
        conditions: Vec<ConditionReport>,
        truncation: (usize, usize),
    ) -> Self {
        let verdict = conditions
            .iter()
            .fold(Verdict::Satisfied, |v, c| v.and(c.verdict));
        ClassVerdict {
            source: source.into(),
            target: target.into(),
            rule,
            verdict,
            conditions,
            truncation,
        }
    }
}

/// Window/tolerance parameters for condition predicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub window: usize,
    pub tolerance: f64,
    /// Optional explicit bound for sup conditions; exceeding it on the
    /// truncation is a certified violation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_bound: Option<f64>,
    /// Exhaustive subset-enumeration cap for the absolute-summability
    /// condition.
    pub subset_cap: usize,
}

impl Probe {
    pub fn new(window: usize, tolerance: f64) -> Result<Self> {
        if window < 2 {
            return Err(Error::InvalidParam("probe window must be >= 2".into()));
        }
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::InvalidParam("probe tolerance must be > 0".into()));
        }
        Ok(Probe {
            window,
            tolerance,
            sup_bound: None,
            subset_cap: 16,
        })
    }

    pub fn with_sup_bound(mut self, bound: f64) -> Self {
        self.sup_bound = Some(bound);
        self
    }

    pub fn with_subset_cap(mut self, cap: usize) -> Self {
        self.subset_cap = cap;
        self
    }

    /// Minimum truncation a probe can say anything about: two windows.
    pub fn min_len(&self) -> usize {
        2 * self.window
    }

    pub fn require_len(&self, len: usize) -> Result<()> {
        if len < self.min_len() {
            Err(Error::TruncationTooSmall {
                needed: self.min_len(),
                got: len,
            })
        } else {
            Ok(())
        }
    }
}

/// Per-window statistics over the trailing windows of a sequence.
pub(crate) struct WindowStats {
    /// max |value| per window, oldest first.
    pub max_abs: Vec<f64>,
    /// max - min per window, oldest first.
    pub osc: Vec<f64>,
    pub last_value: f64,
    /// index (into the original slice) and value of the global |max|.
    pub peak: (usize, f64),
}

impl WindowStats {
    pub fn compute(s: &[f64], window: usize) -> WindowStats {
        assert!(window >= 1 && s.len() >= window);
        let count = s.len() / window;
        let start = s.len() - count * window;
        let mut max_abs = Vec::with_capacity(count);
        let mut osc = Vec::with_capacity(count);
        for w in 0..count {
            let chunk = &s[start + w * window..start + (w + 1) * window];
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            let mut m = 0.0f64;
            for &v in chunk {
                lo = lo.min(v);
                hi = hi.max(v);
                m = m.max(v.abs());
            }
            max_abs.push(m);
            osc.push(hi - lo);
        }
        let mut peak = (0, 0.0);
        for (i, &v) in s.iter().enumerate() {
            if v.abs() >= peak.1 {
                peak = (i, v.abs());
            }
        }
        WindowStats {
            max_abs,
            osc,
            last_value: *s.last().expect("nonempty"),
            peak,
        }
    }

    pub fn last_osc(&self) -> f64 {
        *self.osc.last().unwrap()
    }

    pub fn last_max_abs(&self) -> f64 {
        *self.max_abs.last().unwrap()
    }

    /// Certified growth: at least three windows, maxima strictly
    /// increasing over every window, increments non-decreasing. Bounded
    /// sequences creeping up to a finite sup have shrinking increments
    /// and are deliberately not certified.
    pub fn growth_certified(&self) -> bool {
        let m = &self.max_abs;
        if m.len() < 3 {
            return false;
        }
        for w in m.windows(2) {
            if w[1] <= w[0] + slack(w[0]) {
                return false;
            }
        }
        let mut prev_inc = m[1] - m[0];
        for w in m.windows(2).skip(1) {
            let inc = w[1] - w[0];
            if inc < prev_inc - slack(prev_inc) {
                return false;
            }
            prev_inc = inc;
        }
        true
    }

    /// Max-abs non-increasing across the last (up to) three windows.
    pub fn maxima_non_increasing(&self) -> bool {
        let tail = tail3(&self.max_abs);
        tail.windows(2).all(|w| w[1] <= w[0] + slack(w[0]))
    }

    /// Oscillations non-increasing across the last (up to) three windows.
    pub fn osc_non_increasing(&self) -> bool {
        let tail = tail3(&self.osc);
        tail.windows(2).all(|w| w[1] <= w[0] + slack(w[0]))
    }

    /// Oscillations strictly improving: non-increasing and the last one
    /// strictly below the first considered. A Cauchy-style trend.
    pub fn osc_improving(&self) -> bool {
        let tail = tail3(&self.osc);
        self.osc_non_increasing() && *tail.last().unwrap() < tail.first().unwrap() - slack(tail[0])
    }
}

fn tail3(v: &[f64]) -> &[f64] {
    let n = v.len();
    &v[n.saturating_sub(3)..]
}

/// Relative slack absorbing float rounding in trend comparisons; exact
/// rational aggregates convert to floats that differ by at most this.
fn slack(x: f64) -> f64 {
    1e-12 * x.abs().max(1.0)
}

/// Outcome of probing one scalar sequence.
pub(crate) struct SeqProbe {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

fn base_evidence(st: &WindowStats) -> Evidence {
    Evidence {
        sup: Some(st.peak.1),
        limit: Some(st.last_value),
        oscillation: Some(st.last_osc()),
        window_maxima: st.max_abs.clone(),
        ..Evidence::default()
    }
}

/// Does the truncation support `lim s_n` existing (finite)?
///
/// Satisfied when the last window has stabilized (oscillation below the
/// tolerance) or the window oscillations are strictly improving.
pub(crate) fn probe_limit_exists(s: &[f64], probe: &Probe) -> SeqProbe {
    let st = WindowStats::compute(s, probe.window);
    let mut ev = base_evidence(&st);
    let verdict = if st.growth_certified() {
        ev.witness = Some(Witness {
            row: Some(st.peak.0),
            col: None,
            value: st.peak.1,
        });
        ev.note = Some("certified growth trend; no finite limit".into());
        Verdict::Violated
    } else if st.last_osc() < probe.tolerance || st.osc_improving() {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    SeqProbe {
        verdict,
        evidence: ev,
    }
}

/// Does the truncation support `lim s_n = target`?
///
/// Unlike [`probe_limit_exists`] this needs the values themselves to have
/// reached the target, not just to look Cauchy. A full window of values
/// stalled exactly (within float slack) away from the target is a recorded
/// witness against the condition; values that are still moving, however
/// slowly, stay inconclusive.
pub(crate) fn probe_limit_equals(s: &[f64], target: f64, probe: &Probe) -> SeqProbe {
    let dev: Vec<f64> = s.iter().map(|v| v - target).collect();
    let st = WindowStats::compute(&dev, probe.window);
    let raw = WindowStats::compute(s, probe.window);
    let mut ev = base_evidence(&raw);
    ev.window_maxima = st.max_abs.clone();
    let last = *s.last().expect("nonempty");
    let stalled = s.len() >= probe.window
        && s[s.len() - probe.window..]
            .iter()
            .all(|v| (v - last).abs() <= slack(last));
    let verdict = if st.growth_certified() {
        ev.witness = Some(Witness {
            row: Some(st.peak.0),
            col: None,
            value: s[st.peak.0],
        });
        ev.note = Some("certified growth trend".into());
        Verdict::Violated
    } else if st.last_max_abs() < probe.tolerance && st.maxima_non_increasing() {
        Verdict::Satisfied
    } else if stalled && st.last_max_abs() >= probe.tolerance {
        let idx = s.len() - 1;
        ev.witness = Some(Witness {
            row: Some(idx),
            col: None,
            value: s[idx],
        });
        ev.note = Some(format!("stalled away from {target}"));
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    SeqProbe {
        verdict,
        evidence: ev,
    }
}

/// Is `sup_n |s_n| < infinity` plausible on this truncation?
///
/// The reported sup is a lower bound of the true sup. Without an explicit
/// bound, violation needs a certified growth trend; with one, exceeding
/// it anywhere is a witness.
pub(crate) fn probe_sup_finite(s: &[f64], probe: &Probe) -> SeqProbe {
    let st = WindowStats::compute(s, probe.window);
    let mut ev = base_evidence(&st);
    ev.limit = None;
    if let Some(bound) = probe.sup_bound {
        if st.peak.1 > bound {
            ev.witness = Some(Witness {
                row: Some(st.peak.0),
                col: None,
                value: s[st.peak.0],
            });
            ev.note = Some(format!("exceeds the supplied bound {bound}"));
            return SeqProbe {
                verdict: Verdict::Violated,
                evidence: ev,
            };
        }
    }
    // a full window's worth of frozen values counts as bounded evidence
    // even after earlier growth (sums that accumulate and then stall)
    let last = *s.last().expect("nonempty");
    let frozen_len = s
        .iter()
        .rev()
        .take_while(|v| (**v - last).abs() <= probe.tolerance)
        .count();
    let frozen = frozen_len >= probe.window;
    let verdict = if st.growth_certified() {
        ev.witness = Some(Witness {
            row: Some(st.peak.0),
            col: None,
            value: s[st.peak.0],
        });
        ev.note = Some("certified growth trend".into());
        Verdict::Violated
    } else if probe.sup_bound.is_some() || st.maxima_non_increasing() || frozen {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    SeqProbe {
        verdict,
        evidence: ev,
    }
}
