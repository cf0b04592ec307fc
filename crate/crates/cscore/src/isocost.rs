//! Constant-cost and constant-F1 curves in precision-recall space.
//!
//! Setting the cost score to a fixed level `c` and solving for precision
//! gives the isocost curve
//!
//! ```text
//! precision(recall) = recall / (c + recall * (rc + 1) - rc)
//! ```
//!
//! while fixing F1 gives
//!
//! ```text
//! precision(recall) = f1 * recall / (2 * recall - f1)
//! ```
//!
//! A curve point is feasible when the resulting precision lands in (0, 1].
//! The isocost slope changes sign with the level: curves below cost `rc`
//! slope down, curves above it slope up, and the curve at exactly `rc`
//! is flat. Iso-F1 curves always slope down. Comparing the two slopes at
//! a shared point shows where trading recall for precision at constant
//! F1 makes the cost better or worse.

use crate::error::{Error, Result};
use crate::metrics::{ConfusionMatrix, CostRatio};

/// Sign of an isocost slope, decided exactly from level vs ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeSign {
    Negative,
    Zero,
    Positive,
}

/// A sampled constant-cost curve in precision-recall space.
#[derive(Debug, Clone, PartialEq)]
pub struct IsocostCurve {
    pub rc: CostRatio,
    pub level: f64,
    /// Feasible (recall, precision) samples in ascending recall order.
    pub points: Vec<PrPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub recall: f64,
    pub precision: f64,
}

fn check_recall(recall: f64) -> Result<()> {
    if !recall.is_finite() || recall <= 0.0 || recall > 1.0 {
        return Err(Error::InvalidArgument {
            name: "recall",
            expected: "within (0, 1]",
            value: recall,
        });
    }
    Ok(())
}

fn check_level(level: f64) -> Result<()> {
    if !level.is_finite() || level < 0.0 {
        return Err(Error::InvalidArgument {
            name: "level",
            expected: "a non-negative finite cost",
            value: level,
        });
    }
    Ok(())
}

/// Denominator of the isocost curve, `level + recall * (rc + 1) - rc`.
fn isocost_denominator(recall: f64, level: f64, rc: CostRatio) -> f64 {
    level + recall * (rc.value() + 1.0) - rc.value()
}

/// Precision at which (recall, precision) costs exactly `level`.
pub fn isocost_precision(recall: f64, level: f64, rc: CostRatio) -> Result<f64> {
    check_recall(recall)?;
    check_level(level)?;
    let d = isocost_denominator(recall, level, rc);
    if d <= 0.0 {
        return Err(Error::InfeasiblePoint { recall, level });
    }
    let precision = recall / d;
    if precision > 1.0 {
        return Err(Error::InfeasiblePoint { recall, level });
    }
    Ok(precision)
}

/// Precision on the curve of constant F1 at the given recall.
pub fn f1_isocurve_precision(recall: f64, f1: f64) -> Result<f64> {
    check_recall(recall)?;
    check_f1(f1)?;
    let d = 2.0 * recall - f1;
    if d <= 0.0 {
        return Err(Error::InfeasiblePoint { recall, level: f1 });
    }
    let precision = f1 * recall / d;
    if precision > 1.0 {
        return Err(Error::InfeasiblePoint { recall, level: f1 });
    }
    Ok(precision)
}

fn check_f1(f1: f64) -> Result<()> {
    if !f1.is_finite() || f1 <= 0.0 || f1 > 1.0 {
        return Err(Error::InvalidArgument {
            name: "f1",
            expected: "within (0, 1]",
            value: f1,
        });
    }
    Ok(())
}

/// Slope dPrecision/dRecall of the isocost curve at a feasible point:
/// `(level - rc) / (level + recall * (rc + 1) - rc)^2`.
pub fn cscore_slope(recall: f64, level: f64, rc: CostRatio) -> Result<f64> {
    // Feasibility is the same as for the curve value itself.
    isocost_precision(recall, level, rc)?;
    let d = isocost_denominator(recall, level, rc);
    Ok((level - rc.value()) / (d * d))
}

/// Slope dPrecision/dRecall of the constant-F1 curve:
/// `-f1^2 / (2 * recall - f1)^2`. Always negative where defined.
pub fn f1_slope(recall: f64, f1: f64) -> Result<f64> {
    check_recall(recall)?;
    check_f1(f1)?;
    let d = 2.0 * recall - f1;
    if d <= 0.0 {
        return Err(Error::InfeasiblePoint { recall, level: f1 });
    }
    Ok(-(f1 * f1) / (d * d))
}

/// Sign of the isocost slope, from the exact comparison of level and
/// ratio: positive above `rc`, negative below, zero at `rc` itself.
pub fn slope_sign(level: f64, rc: CostRatio) -> Result<SlopeSign> {
    check_level(level)?;
    Ok(match level.partial_cmp(&rc.value()).expect("both finite") {
        std::cmp::Ordering::Less => SlopeSign::Negative,
        std::cmp::Ordering::Equal => SlopeSign::Zero,
        std::cmp::Ordering::Greater => SlopeSign::Positive,
    })
}

/// Shifts a confusion matrix along its constant-cost family:
/// `(tp + k, fp + rc * k, fn - k, tn - rc * k)`.
///
/// The shift moves `k` misses into hits while adding `rc * k` false
/// alarms, which leaves `fp + rc * fn` (and hence the cost score)
/// unchanged while precision and recall move. Any shift that would drive
/// a count negative is rejected.
pub fn cost_preserving_shift(
    base: &ConfusionMatrix,
    rc: CostRatio,
    k: f64,
) -> Result<ConfusionMatrix> {
    if !k.is_finite() {
        return Err(Error::InvalidArgument {
            name: "k",
            expected: "a finite shift",
            value: k,
        });
    }
    let r = rc.value();
    ConfusionMatrix::new(
        base.tp() + k,
        base.fp() + r * k,
        base.fn_() - k,
        base.tn() - r * k,
    )
}

/// Samples the isocost curve at recalls `i / n_points` for
/// `i = 1 ..= n_points`, keeping only feasible points. Returns fewer than
/// `n_points` samples when part of the grid is infeasible, and an error
/// when no grid recall is feasible at all.
pub fn sample_isocost(level: f64, rc: CostRatio, n_points: usize) -> Result<IsocostCurve> {
    check_level(level)?;
    if n_points < 2 {
        return Err(Error::InvalidConfig(
            "curve sampling needs at least 2 grid points".to_string(),
        ));
    }
    let mut points = Vec::new();
    for i in 1..=n_points {
        let recall = i as f64 / n_points as f64;
        match isocost_precision(recall, level, rc) {
            Ok(precision) => points.push(PrPoint { recall, precision }),
            Err(Error::InfeasiblePoint { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyCurve { level });
    }
    Ok(IsocostCurve { rc, level, points })
}

/// Samples the constant-F1 curve on the same recall grid as
/// [`sample_isocost`], skipping infeasible recalls.
pub fn sample_f1_curve(f1: f64, n_points: usize) -> Result<Vec<PrPoint>> {
    check_f1(f1)?;
    if n_points < 2 {
        return Err(Error::InvalidConfig(
            "curve sampling needs at least 2 grid points".to_string(),
        ));
    }
    let mut points = Vec::new();
    for i in 1..=n_points {
        let recall = i as f64 / n_points as f64;
        match f1_isocurve_precision(recall, f1) {
            Ok(precision) => points.push(PrPoint { recall, precision }),
            Err(Error::InfeasiblePoint { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(points)
}
