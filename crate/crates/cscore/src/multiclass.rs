//! One-vs-rest evaluation of multiclass scores.
//!
//! Each class is treated as an independent binary problem: its score
//! column against "this class or not", with its own threshold and its own
//! cost ratio. Multilabel data works through the same path, since every
//! label column is already an independent binary problem. Per-class
//! scores are combined with an explicit aggregation method; there is no
//! single canonical way to average costs across classes, so the caller
//! picks one.

use crate::error::{Error, Result};
use crate::metrics::CostRatio;
use crate::sweep::{confusion_at, ScoredDataset, ScoredExample};

/// One example scored against every class. Scores are finite reals in
/// [0, 1], one per class, and need not sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MulticlassScoredExample {
    scores: Vec<f64>,
    true_class: usize,
}

impl MulticlassScoredExample {
    pub fn new(scores: Vec<f64>, true_class: usize) -> Result<Self> {
        if scores.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "an example needs at least 2 class scores, got {}",
                scores.len()
            )));
        }
        for &s in &scores {
            if !s.is_finite() || !(0.0..=1.0).contains(&s) {
                return Err(Error::InvalidArgument {
                    name: "score",
                    expected: "within [0, 1]",
                    value: s,
                });
            }
        }
        if true_class >= scores.len() {
            return Err(Error::InvalidConfig(format!(
                "true class {true_class} is out of range for {} classes",
                scores.len()
            )));
        }
        Ok(Self { scores, true_class })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn true_class(&self) -> usize {
        self.true_class
    }
}

/// Per-class cost ratios, indexed by class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassCostProfile {
    ratios: Vec<CostRatio>,
}

impl ClassCostProfile {
    pub fn new(ratios: Vec<CostRatio>) -> Self {
        Self { ratios }
    }

    pub fn ratios(&self) -> &[CostRatio] {
        &self.ratios
    }

    pub fn len(&self) -> usize {
        self.ratios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratios.is_empty()
    }
}

/// How to combine per-class cost scores into one number.
#[derive(Debug, Clone, PartialEq)]
pub enum AggregationMethod {
    /// Unweighted mean.
    Arithmetic,
    /// Weighted mean; weights are non-negative and sum to 1 within 1e-12.
    Weighted(Vec<f64>),
    /// `n / sum(1/v)`, defined as 0 when any value is 0.
    Harmonic,
}

/// Number of classes shared by every example, with shape validation.
fn class_count(ds: &[MulticlassScoredExample]) -> Result<usize> {
    let first = ds
        .first()
        .ok_or_else(|| Error::InvalidConfig("dataset is empty".to_string()))?;
    let count = first.scores.len();
    for (i, e) in ds.iter().enumerate() {
        if e.scores.len() != count {
            return Err(Error::InvalidConfig(format!(
                "example {i} has {} class scores, expected {count}",
                e.scores.len()
            )));
        }
    }
    Ok(count)
}

/// The one-vs-rest binary view of one class: that class's score column,
/// labeled positive exactly where it is the true class.
pub fn binarize(ds: &[MulticlassScoredExample], class: usize) -> Result<ScoredDataset> {
    let count = class_count(ds)?;
    if class >= count {
        return Err(Error::InvalidConfig(format!(
            "class {class} is out of range for {count} classes"
        )));
    }
    if !ds.iter().any(|e| e.true_class == class) {
        return Err(Error::DegenerateClass { class });
    }
    let examples = ds
        .iter()
        .map(|e| ScoredExample::new(e.scores[class], e.true_class == class))
        .collect::<Result<Vec<_>>>()?;
    ScoredDataset::new(examples)
}

/// Cost score of every class's one-vs-rest problem at its own threshold
/// and ratio, ordered by class index. Every class must appear in the
/// data, and the threshold and ratio lists must cover every class.
pub fn per_class_cscores(
    ds: &[MulticlassScoredExample],
    profile: &ClassCostProfile,
    thresholds: &[f64],
) -> Result<Vec<f64>> {
    let count = class_count(ds)?;
    if profile.len() != count {
        return Err(Error::LengthMismatch {
            expected: count,
            actual: profile.len(),
        });
    }
    if thresholds.len() != count {
        return Err(Error::LengthMismatch {
            expected: count,
            actual: thresholds.len(),
        });
    }
    for &t in thresholds {
        if !t.is_finite() {
            return Err(Error::InvalidArgument {
                name: "threshold",
                expected: "a finite real",
                value: t,
            });
        }
    }
    let mut out = Vec::with_capacity(count);
    for (class, (&threshold, &ratio)) in thresholds.iter().zip(profile.ratios()).enumerate() {
        let binary = binarize(ds, class)?;
        let matrix = confusion_at(&binary, threshold);
        out.push(matrix.cscore(ratio)?);
    }
    Ok(out)
}

/// Combines non-negative per-class scores with the chosen method.
pub fn aggregate(values: &[f64], method: &AggregationMethod) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidConfig(
            "cannot aggregate zero values".to_string(),
        ));
    }
    for &v in values {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidArgument {
                name: "value",
                expected: "a non-negative finite real",
                value: v,
            });
        }
    }
    match method {
        AggregationMethod::Arithmetic => Ok(values.iter().sum::<f64>() / values.len() as f64),
        AggregationMethod::Weighted(weights) => {
            if weights.len() != values.len() {
                return Err(Error::LengthMismatch {
                    expected: values.len(),
                    actual: weights.len(),
                });
            }
            for &w in weights {
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidArgument {
                        name: "weight",
                        expected: "a non-negative finite real",
                        value: w,
                    });
                }
            }
            let total: f64 = weights.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidConfig(format!(
                    "weights must sum to 1, got {total}"
                )));
            }
            Ok(values.iter().zip(weights).map(|(v, w)| v * w).sum())
        }
        AggregationMethod::Harmonic => {
            if values.contains(&0.0) {
                return Ok(0.0);
            }
            Ok(values.len() as f64 / values.iter().map(|v| 1.0 / v).sum::<f64>())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rc(v: f64) -> CostRatio {
        CostRatio::new(v).unwrap()
    }

    fn ex(scores: &[f64], true_class: usize) -> MulticlassScoredExample {
        MulticlassScoredExample::new(scores.to_vec(), true_class).unwrap()
    }

    fn three_class_ds() -> Vec<MulticlassScoredExample> {
        vec![
            ex(&[0.7, 0.2, 0.1], 0),
            ex(&[0.4, 0.5, 0.1], 0),
            ex(&[0.1, 0.8, 0.1], 1),
            ex(&[0.3, 0.6, 0.1], 1),
            ex(&[0.2, 0.1, 0.9], 2),
            ex(&[0.1, 0.2, 0.7], 2),
        ]
    }

    #[test]
    fn example_shape_is_validated() {
        assert!(MulticlassScoredExample::new(vec![0.5], 0).is_err());
        assert!(MulticlassScoredExample::new(vec![0.5, 1.5], 0).is_err());
        assert!(MulticlassScoredExample::new(vec![0.5, 0.5], 2).is_err());
    }

    #[test]
    fn binarize_extracts_one_column() {
        let ds = vec![ex(&[0.7, 0.2, 0.1], 0), ex(&[0.1, 0.8, 0.1], 1)];
        let binary = binarize(&ds, 0).unwrap();
        let pairs: Vec<(f64, bool)> = binary
            .examples()
            .iter()
            .map(|e| (e.score(), e.is_positive()))
            .collect();
        assert_eq!(pairs, vec![(0.7, true), (0.1, false)]);
    }

    #[test]
    fn binarize_requires_a_member_of_the_class() {
        let ds = vec![ex(&[0.7, 0.2, 0.1], 0), ex(&[0.1, 0.8, 0.1], 1)];
        assert!(matches!(
            binarize(&ds, 2),
            Err(Error::DegenerateClass { class: 2 })
        ));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let ds = vec![ex(&[0.7, 0.2, 0.1], 0), ex(&[0.1, 0.8], 1)];
        assert!(binarize(&ds, 0).is_err());
    }

    #[test]
    fn per_class_scores_match_hand_counts() {
        // At threshold 0.5 per class: class 0 misses one member (fn=1),
        // class 1 picks up one false alarm (fp=1), class 2 is clean.
        let ds = three_class_ds();
        let profile = ClassCostProfile::new(vec![rc(1.0), rc(2.0), rc(0.5)]);
        let scores = per_class_cscores(&ds, &profile, &[0.5, 0.5, 0.5]).unwrap();
        assert_relative_eq!(scores[0], 0.5, max_relative = 1e-12);
        assert_relative_eq!(scores[1], 0.5, max_relative = 1e-12);
        assert_eq!(scores[2], 0.0);
    }

    #[test]
    fn per_class_requires_full_coverage() {
        let ds = three_class_ds();
        let profile = ClassCostProfile::new(vec![rc(1.0), rc(2.0)]);
        assert!(matches!(
            per_class_cscores(&ds, &profile, &[0.5, 0.5, 0.5]),
            Err(Error::LengthMismatch { .. })
        ));
        let profile = ClassCostProfile::new(vec![rc(1.0), rc(2.0), rc(0.5)]);
        assert!(matches!(
            per_class_cscores(&ds, &profile, &[0.5, 0.5]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn binary_data_through_the_multiclass_path_agrees() {
        let pairs = [(0.9, true), (0.2, false), (0.7, true), (0.4, false)];
        let ds: Vec<MulticlassScoredExample> = pairs
            .iter()
            .map(|&(s, pos)| ex(&[1.0 - s, s], usize::from(pos)))
            .collect();
        let binary = ScoredDataset::from_pairs(pairs).unwrap();
        let t = 0.5;
        let direct = confusion_at(&binary, t).cscore(rc(3.0)).unwrap();
        let profile = ClassCostProfile::new(vec![rc(1.0), rc(3.0)]);
        let per_class = per_class_cscores(&ds, &profile, &[0.5, t]).unwrap();
        assert_eq!(per_class[1], direct);
    }

    #[test]
    fn arithmetic_aggregate_is_the_mean() {
        let m = AggregationMethod::Arithmetic;
        assert_relative_eq!(
            aggregate(&[0.2, 0.4], &m).unwrap(),
            0.3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn weighted_aggregate_applies_weights() {
        let m = AggregationMethod::Weighted(vec![0.75, 0.25]);
        assert_relative_eq!(
            aggregate(&[0.1, 0.3], &m).unwrap(),
            0.15,
            max_relative = 1e-12
        );
    }

    #[test]
    fn weighted_aggregate_validates_weights() {
        let values = [0.1, 0.3];
        assert!(aggregate(&values, &AggregationMethod::Weighted(vec![0.5])).is_err());
        assert!(aggregate(&values, &AggregationMethod::Weighted(vec![0.7, 0.4])).is_err());
        assert!(aggregate(&values, &AggregationMethod::Weighted(vec![-0.2, 1.2])).is_err());
    }

    #[test]
    fn harmonic_aggregate_handles_zero_values() {
        assert_relative_eq!(
            aggregate(&[0.2, 0.2], &AggregationMethod::Harmonic).unwrap(),
            0.2,
            max_relative = 1e-12
        );
        assert_eq!(
            aggregate(&[0.0, 5.0], &AggregationMethod::Harmonic).unwrap(),
            0.0
        );
    }

    #[test]
    fn aggregate_rejects_empty_and_negative_input() {
        assert!(aggregate(&[], &AggregationMethod::Arithmetic).is_err());
        assert!(aggregate(&[-0.1], &AggregationMethod::Arithmetic).is_err());
    }
}
