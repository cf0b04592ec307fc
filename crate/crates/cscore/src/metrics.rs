//! Confusion-matrix metrics and the cost score.
//!
//! The cost score of a binary classifier is its expected misclassification
//! cost per ground-truth positive, with the cost of a false positive fixed
//! at 1 and the cost of a false negative given by a ratio `rc`:
//!
//! ```text
//! cscore = (fp + rc * fn) / p        where p = tp + fn
//! ```
//!
//! The same quantity can be computed from precision and recall,
//!
//! ```text
//! cscore = (1/precision - 1) * recall + rc * (1 - recall)
//! ```
//!
//! or from rates, scaled by the base rate so that it is an expected cost
//! per example instead of per positive:
//!
//! ```text
//! base_rate * cscore = fpr * (1 - base_rate) + base_rate * rc * (1 - tpr)
//! ```
//!
//! All three agree on any matrix where they are defined. Unlike F1, the
//! score is linear in the error counts, so two matrices that trade false
//! positives for false negatives at the exchange rate `rc` cost the same.

use crate::error::{Error, Result};

/// Counts of a binary classifier's outcomes. Counts are non-negative
/// finite reals rather than integers so that fractional matrices (for
/// example expectations, or cost-preserving shifts) are representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfusionMatrix {
    tp: f64,
    fp: f64,
    fn_: f64,
    tn: f64,
}

impl ConfusionMatrix {
    /// Builds a matrix from (true positive, false positive, false negative,
    /// true negative) counts, rejecting negative or non-finite values.
    pub fn new(tp: f64, fp: f64, fn_: f64, tn: f64) -> Result<Self> {
        for (name, value) in [("tp", tp), ("fp", fp), ("fn", fn_), ("tn", tn)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidCount { name, value });
            }
        }
        // Adding 0.0 maps -0.0 to +0.0 and leaves every other value alone.
        Ok(Self {
            tp: tp + 0.0,
            fp: fp + 0.0,
            fn_: fn_ + 0.0,
            tn: tn + 0.0,
        })
    }

    pub(crate) fn from_valid_counts(tp: f64, fp: f64, fn_: f64, tn: f64) -> Self {
        debug_assert!(tp >= 0.0 && fp >= 0.0 && fn_ >= 0.0 && tn >= 0.0);
        Self { tp, fp, fn_, tn }
    }

    pub fn tp(&self) -> f64 {
        self.tp
    }

    pub fn fp(&self) -> f64 {
        self.fp
    }

    pub fn fn_(&self) -> f64 {
        self.fn_
    }

    pub fn tn(&self) -> f64 {
        self.tn
    }

    /// Ground-truth positives, `tp + fn`.
    pub fn positives(&self) -> f64 {
        self.tp + self.fn_
    }

    /// Ground-truth negatives, `fp + tn`.
    pub fn negatives(&self) -> f64 {
        self.fp + self.tn
    }

    /// Predicted positives, `tp + fp`.
    pub fn predicted_positives(&self) -> f64 {
        self.tp + self.fp
    }

    /// Predicted negatives, `fn + tn`.
    pub fn predicted_negatives(&self) -> f64 {
        self.fn_ + self.tn
    }

    pub fn total(&self) -> f64 {
        self.positives() + self.negatives()
    }

    /// Derives the standard rates and F1 from the counts.
    ///
    /// Requires at least one ground-truth positive. Precision is `None`
    /// when nothing was predicted positive, and fpr/tnr are `None` when
    /// there are no ground-truth negatives; no rate is ever silently
    /// reported as 0 or NaN when its denominator is empty.
    pub fn metrics(&self) -> Result<MetricSet> {
        let p = self.positives();
        if p == 0.0 {
            return Err(Error::DegenerateDataset);
        }
        let n = self.negatives();
        let predicted = self.predicted_positives();
        Ok(MetricSet {
            precision: (predicted > 0.0).then(|| self.tp / predicted),
            recall: self.tp / p,
            fpr: (n > 0.0).then(|| self.fp / n),
            tnr: (n > 0.0).then(|| self.tn / n),
            base_rate: p / self.total(),
            // 2tp / (2tp + fp + fn); evaluates to 0 whenever tp = 0, which
            // covers the empty-prediction case without a special branch.
            f1: 2.0 * self.tp / (2.0 * self.tp + self.fp + self.fn_),
        })
    }

    /// Cost score from counts: `(fp + rc * fn) / p`.
    ///
    /// This is the canonical form; it stays defined when precision is not
    /// (nothing predicted positive), where it evaluates to exactly `rc`.
    /// The two terms are computed as `fp/p + rc * (fn/p)` so that the
    /// all-negative matrix yields `rc` with no rounding and the
    /// all-positive matrix yields `negatives/positives` independent of
    /// `rc`.
    pub fn cscore(&self, rc: CostRatio) -> Result<f64> {
        let p = self.positives();
        if p == 0.0 {
            return Err(Error::DegenerateDataset);
        }
        Ok(self.fp / p + rc.value() * (self.fn_ / p))
    }

    /// Total misclassification cost in currency units: `c_fp * (fp + rc * fn)`,
    /// where `c_fp` is the cost of one false positive.
    pub fn total_cost(&self, c_fp: f64, rc: CostRatio) -> Result<f64> {
        if !c_fp.is_finite() || c_fp <= 0.0 {
            return Err(Error::InvalidArgument {
                name: "c_fp",
                expected: "a positive finite cost",
                value: c_fp,
            });
        }
        Ok(c_fp * (self.fp + rc.value() * self.fn_))
    }
}

/// Ratio of the cost of a false negative to the cost of a false positive.
/// Always positive and finite; ratios compare, hash, and serialize by
/// exact value.
#[derive(Debug, Clone, Copy)]
pub struct CostRatio(f64);

impl CostRatio {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidCostRatio { value });
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl PartialEq for CostRatio {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for CostRatio {}

impl PartialOrd for CostRatio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CostRatio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // The wrapped value is always a positive finite float, for which
        // the IEEE bit pattern orders exactly like the number.
        self.0.to_bits().cmp(&other.0.to_bits())
    }
}

impl std::hash::Hash for CostRatio {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl std::fmt::Display for CostRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The standard threshold-level metrics of one confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSet {
    /// `tp / (tp + fp)`, or `None` when nothing was predicted positive.
    pub precision: Option<f64>,
    /// `tp / (tp + fn)`.
    pub recall: f64,
    /// `fp / (fp + tn)`, or `None` when there are no ground-truth negatives.
    pub fpr: Option<f64>,
    /// `tn / (fp + tn)`, or `None` when there are no ground-truth negatives.
    pub tnr: Option<f64>,
    /// `(tp + fn) / total`.
    pub base_rate: f64,
    /// `2tp / (2tp + fp + fn)`; 0 when nothing was predicted positive.
    pub f1: f64,
}

/// Cost implied by an F1 value: `1/f1 - 1`.
///
/// Minimizing this is the same as maximizing F1, which makes it directly
/// comparable with the cost score. A zero F1 has unbounded cost and is
/// reported as an error rather than infinity.
pub fn f1_cost(f1: f64) -> Result<f64> {
    if f1 == 0.0 {
        return Err(Error::UnboundedCost {
            reason: "an F1 of 0 has no finite cost",
        });
    }
    if !f1.is_finite() || !(0.0..=1.0).contains(&f1) {
        return Err(Error::InvalidArgument {
            name: "f1",
            expected: "within (0, 1]",
            value: f1,
        });
    }
    Ok(1.0 / f1 - 1.0)
}

/// Cost score from an operating point: `(1/precision - 1) * recall + rc * (1 - recall)`.
///
/// At recall 0 the score is exactly `rc` for any precision (the analytic
/// limit: nothing is flagged, so every positive is missed). Zero precision
/// with positive recall is impossible on a real matrix and is rejected as
/// unbounded.
pub fn cscore_pr(precision: f64, recall: f64, rc: CostRatio) -> Result<f64> {
    if !recall.is_finite() || !(0.0..=1.0).contains(&recall) {
        return Err(Error::InvalidArgument {
            name: "recall",
            expected: "within [0, 1]",
            value: recall,
        });
    }
    if recall == 0.0 {
        return Ok(rc.value());
    }
    if precision == 0.0 {
        return Err(Error::UnboundedCost {
            reason: "zero precision with positive recall",
        });
    }
    if !precision.is_finite() || !(0.0..=1.0).contains(&precision) {
        return Err(Error::InvalidArgument {
            name: "precision",
            expected: "within (0, 1]",
            value: precision,
        });
    }
    Ok((1.0 / precision - 1.0) * recall + rc.value() * (1.0 - recall))
}

/// Cost score per example from rates:
/// `fpr * (1 - base_rate) + base_rate * rc * (1 - tpr)`.
///
/// Equals `base_rate` times the count form of the score.
pub fn cscore_rates(tpr: f64, fpr: f64, base_rate: f64, rc: CostRatio) -> Result<f64> {
    for (name, value) in [("tpr", tpr), ("fpr", fpr)] {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidArgument {
                name,
                expected: "within [0, 1]",
                value,
            });
        }
    }
    if !base_rate.is_finite() || base_rate <= 0.0 || base_rate > 1.0 {
        return Err(Error::InvalidArgument {
            name: "base_rate",
            expected: "within (0, 1]",
            value: base_rate,
        });
    }
    Ok(fpr * (1.0 - base_rate) + base_rate * rc.value() * (1.0 - tpr))
}
