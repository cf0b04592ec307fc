//! Cost-aware evaluation and threshold selection for probabilistic
//! binary classifiers.
//!
//! The central quantity is the cost score of a confusion matrix: the
//! expected misclassification cost per ground-truth positive,
//!
//! ```text
//! C = (fp + rc * fn) / p
//! ```
//!
//! where `rc` is the cost of a false negative expressed in units of
//! false-positive cost. Unlike F1, the cost score ranks operating
//! points by the asymmetry the application actually cares about, and it
//! is invariant under the prediction shifts that leave total cost
//! unchanged. Equivalent forms in precision/recall space and in
//! tpr/fpr/base-rate space support analysis when raw counts are
//! unavailable.
//!
//! On top of the metric, the crate provides:
//!
//! - exhaustive threshold sweeps over a scored dataset, with best-F1
//!   and minimum-cost selection and the relative cost saved by
//!   choosing thresholds cost-aware ([`sweep`], [`improvement_report`],
//!   [`ratio_sweep`]);
//! - the precision/recall geometry of both objectives: isocost lines,
//!   constant-F1 curves, their slopes, and cost-preserving confusion
//!   shifts ([`sample_isocost`], [`cscore_slope`],
//!   [`cost_preserving_shift`]);
//! - per-class cost scores for multiclass problems in one-vs-rest form
//!   with pluggable aggregation ([`per_class_cscores`], [`aggregate`]);
//! - a deterministic synthetic dataset generator for experiments
//!   ([`generate`]);
//! - dataset CSV input/output, content digests, and machine- and
//!   human-readable evaluation reports ([`load_dataset`],
//!   [`build_report`], [`render_report`]).
//!
//! Scores live in [0, 1] and a threshold `t` predicts positive exactly
//! when `score >= t`. All selection functions break cost ties toward
//! the smallest threshold, so results are deterministic.

pub mod error;
pub mod isocost;
pub mod metrics;
pub mod multiclass;
pub mod report;
pub mod sweep;
pub mod synth;

pub use error::{Error, Result};
pub use isocost::{
    cost_preserving_shift, cscore_slope, f1_isocurve_precision, f1_slope, isocost_precision,
    sample_f1_curve, sample_isocost, slope_sign, IsocostCurve, PrPoint, SlopeSign,
};
pub use metrics::{cscore_pr, cscore_rates, f1_cost, ConfusionMatrix, CostRatio, MetricSet};
pub use multiclass::{
    aggregate, binarize, per_class_cscores, AggregationMethod, ClassCostProfile,
    MulticlassScoredExample,
};
pub use report::{
    build_report, dataset_csv, f1_curves_csv, file_digest, isocost_csv, load_dataset, points_csv,
    ratio_sweep_csv, render_report, sweep_json, CostChoiceSummary, DatasetSummary, F1ChoiceSummary,
    ImprovementSummary, Report, ReportFormat,
};
pub use sweep::{
    best_f1_threshold, candidate_thresholds, confusion_at, improvement_pct, improvement_report,
    min_cost_threshold, ratio_sweep, sweep, ImprovementEntry, ImprovementReport, MetricPoint,
    Objective, RatioSweepPoint, ScoredDataset, ScoredExample, SweepResult, ThresholdChoice,
    SENTINEL_THRESHOLD,
};
pub use synth::{generate, SynthConfig};
