//! Threshold sweeps over scored datasets and threshold selection.
//!
//! An example is predicted positive when its score is greater than or
//! equal to the threshold. Every threshold between two adjacent distinct
//! scores yields the same confusion matrix, so the sweep evaluates one
//! candidate per distinct score plus a sentinel above the maximum score
//! (which predicts everything negative). That candidate set realizes every
//! achievable confusion matrix exactly once.
//!
//! Selection is deterministic: ties on the objective are broken toward the
//! smallest threshold, which among equals is the one with highest recall.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::metrics::{ConfusionMatrix, CostRatio, MetricSet};

/// A threshold strictly above every valid score. Scores live in [0, 1],
/// so sweeping this value predicts everything negative.
pub const SENTINEL_THRESHOLD: f64 = 2.0;

/// One scored, labeled example. Scores are finite reals in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredExample {
    score: f64,
    positive: bool,
}

impl ScoredExample {
    pub fn new(score: f64, positive: bool) -> Result<Self> {
        if !score.is_finite() || !(0.0..=1.0).contains(&score) {
            return Err(Error::InvalidArgument {
                name: "score",
                expected: "within [0, 1]",
                value: score,
            });
        }
        // Adding 0.0 folds -0.0 into +0.0 so that equal scores compare
        // and sort identically.
        Ok(Self {
            score: score + 0.0,
            positive,
        })
    }

    pub fn score(&self) -> f64 {
        self.score
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }
}

/// A non-empty set of scored examples with at least one ground-truth
/// positive (otherwise recall-based metrics would be undefined).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDataset {
    examples: Vec<ScoredExample>,
}

impl ScoredDataset {
    pub fn new(examples: Vec<ScoredExample>) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::InvalidConfig("dataset is empty".to_string()));
        }
        if !examples.iter().any(|e| e.positive) {
            return Err(Error::DegenerateDataset);
        }
        Ok(Self { examples })
    }

    /// Convenience constructor from (score, is_positive) pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, bool)>,
    {
        let examples = pairs
            .into_iter()
            .map(|(s, l)| ScoredExample::new(s, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(examples)
    }

    pub fn examples(&self) -> &[ScoredExample] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    /// Always false: a dataset is non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positives(&self) -> usize {
        self.examples.iter().filter(|e| e.positive).count()
    }

    pub fn negatives(&self) -> usize {
        self.len() - self.positives()
    }
}

/// The metrics of one candidate threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPoint {
    pub threshold: f64,
    pub matrix: ConfusionMatrix,
    pub metrics: MetricSet,
    /// Cost score per evaluated ratio, keyed by exact ratio value.
    pub cscores: BTreeMap<CostRatio, f64>,
}

/// Metrics for every candidate threshold of one dataset, in ascending
/// threshold order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    points: Vec<MetricPoint>,
    ratios: Vec<CostRatio>,
    positives: usize,
    negatives: usize,
}

impl SweepResult {
    pub fn points(&self) -> &[MetricPoint] {
        &self.points
    }

    /// The evaluated cost ratios, ascending and deduplicated.
    pub fn ratios(&self) -> &[CostRatio] {
        &self.ratios
    }

    pub fn positives(&self) -> usize {
        self.positives
    }

    pub fn negatives(&self) -> usize {
        self.negatives
    }

    pub fn total(&self) -> usize {
        self.positives + self.negatives
    }
}

/// Which objective a threshold was chosen to optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    MaxF1,
    MinCost(CostRatio),
}

/// A selected threshold together with the sweep point it realizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdChoice {
    pub objective: Objective,
    pub threshold: f64,
    pub point: MetricPoint,
}

/// Cost comparison of the best-F1 threshold against the minimum-cost
/// threshold, one entry per requested ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct ImprovementReport {
    pub f1_choice: ThresholdChoice,
    pub entries: Vec<ImprovementEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImprovementEntry {
    pub ratio: CostRatio,
    pub cost_choice: ThresholdChoice,
    pub cscore_at_f1: f64,
    pub cscore_at_opt: f64,
    pub improvement_pct: f64,
}

/// One entry of a ratio sweep: the cost saved by cost-aware thresholding
/// at a single ratio on a log10 grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSweepPoint {
    pub log10_ratio: f64,
    pub improvement_pct: f64,
}

/// The sorted distinct score values plus the sentinel.
pub fn candidate_thresholds(ds: &ScoredDataset) -> Vec<f64> {
    let mut scores: Vec<f64> = ds.examples().iter().map(|e| e.score()).collect();
    scores.sort_unstable_by(f64::total_cmp);
    scores.dedup();
    scores.push(SENTINEL_THRESHOLD);
    scores
}

/// Confusion matrix of predicting positive exactly on scores >= t.
pub fn confusion_at(ds: &ScoredDataset, t: f64) -> ConfusionMatrix {
    let (mut tp, mut fp, mut fn_, mut tn) = (0u64, 0u64, 0u64, 0u64);
    for e in ds.examples() {
        match (e.score() >= t, e.is_positive()) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    ConfusionMatrix::from_valid_counts(tp as f64, fp as f64, fn_ as f64, tn as f64)
}

/// Evaluates every candidate threshold in one pass over the sorted scores.
///
/// Points come back in ascending threshold order, which makes tp and fp
/// non-increasing and fn and tn non-decreasing along the sequence. Every
/// requested ratio is evaluated at every point.
pub fn sweep(ds: &ScoredDataset, ratios: &[CostRatio]) -> Result<SweepResult> {
    if ratios.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one cost ratio is required".to_string(),
        ));
    }
    let ratios: Vec<CostRatio> = ratios
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut sorted: Vec<(f64, bool)> = ds
        .examples()
        .iter()
        .map(|e| (e.score(), e.is_positive()))
        .collect();
    sorted.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

    let p = ds.positives();
    let n = ds.negatives();
    let mut points = Vec::new();
    // Counts of examples with score strictly below the current candidate;
    // those are exactly the predicted negatives at that threshold.
    let mut fn_below = 0usize;
    let mut tn_below = 0usize;
    let mut i = 0;
    while i < sorted.len() {
        let t = sorted[i].0;
        points.push(make_point(
            t,
            (p - fn_below) as f64,
            (n - tn_below) as f64,
            fn_below as f64,
            tn_below as f64,
            &ratios,
        )?);
        while i < sorted.len() && sorted[i].0 == t {
            if sorted[i].1 {
                fn_below += 1;
            } else {
                tn_below += 1;
            }
            i += 1;
        }
    }
    points.push(make_point(
        SENTINEL_THRESHOLD,
        0.0,
        0.0,
        p as f64,
        n as f64,
        &ratios,
    )?);

    Ok(SweepResult {
        points,
        ratios,
        positives: p,
        negatives: n,
    })
}

fn make_point(
    threshold: f64,
    tp: f64,
    fp: f64,
    fn_: f64,
    tn: f64,
    ratios: &[CostRatio],
) -> Result<MetricPoint> {
    let matrix = ConfusionMatrix::from_valid_counts(tp, fp, fn_, tn);
    let metrics = matrix.metrics()?;
    let mut cscores = BTreeMap::new();
    for &rc in ratios {
        cscores.insert(rc, matrix.cscore(rc)?);
    }
    Ok(MetricPoint {
        threshold,
        matrix,
        metrics,
        cscores,
    })
}

/// The threshold with maximal F1; ties go to the smallest threshold.
pub fn best_f1_threshold(sr: &SweepResult) -> ThresholdChoice {
    let mut best = &sr.points()[0];
    for point in &sr.points()[1..] {
        if point.metrics.f1 > best.metrics.f1 {
            best = point;
        }
    }
    ThresholdChoice {
        objective: Objective::MaxF1,
        threshold: best.threshold,
        point: best.clone(),
    }
}

/// The threshold with minimal cost score at `rc`; ties go to the smallest
/// threshold, which is the highest-recall minimizer. `rc` must be one of
/// the ratios the sweep evaluated.
pub fn min_cost_threshold(sr: &SweepResult, rc: CostRatio) -> Result<ThresholdChoice> {
    if !sr.ratios().contains(&rc) {
        return Err(Error::UnknownRatio { ratio: rc.value() });
    }
    let mut best = &sr.points()[0];
    for point in &sr.points()[1..] {
        if point.cscores[&rc] < best.cscores[&rc] {
            best = point;
        }
    }
    Ok(ThresholdChoice {
        objective: Objective::MinCost(rc),
        threshold: best.threshold,
        point: best.clone(),
    })
}

/// Relative cost saved by moving from the best-F1 threshold to the
/// minimum-cost threshold, in percent. When both costs are zero the two
/// choices are equally perfect and the saving is zero.
pub fn improvement_pct(cscore_at_f1: f64, cscore_at_opt: f64) -> f64 {
    if cscore_at_f1 == 0.0 {
        0.0
    } else {
        100.0 * (cscore_at_f1 - cscore_at_opt) / cscore_at_f1
    }
}

/// Compares the best-F1 threshold against the minimum-cost threshold at
/// each requested ratio. Ratios are reported in the order given and must
/// all have been evaluated by the sweep.
pub fn improvement_report(sr: &SweepResult, ratios: &[CostRatio]) -> Result<ImprovementReport> {
    let f1_choice = best_f1_threshold(sr);
    let mut entries = Vec::with_capacity(ratios.len());
    for &rc in ratios {
        if !sr.ratios().contains(&rc) {
            return Err(Error::UnknownRatio { ratio: rc.value() });
        }
        let cost_choice = min_cost_threshold(sr, rc)?;
        let cscore_at_f1 = f1_choice.point.cscores[&rc];
        let cscore_at_opt = cost_choice.point.cscores[&rc];
        entries.push(ImprovementEntry {
            ratio: rc,
            cost_choice,
            cscore_at_f1,
            cscore_at_opt,
            improvement_pct: improvement_pct(cscore_at_f1, cscore_at_opt),
        });
    }
    Ok(ImprovementReport { f1_choice, entries })
}

/// Improvement percentages over an even log10 grid of cost ratios from
/// `log10_min` to `log10_max` inclusive, `steps` points total.
pub fn ratio_sweep(
    ds: &ScoredDataset,
    log10_min: f64,
    log10_max: f64,
    steps: usize,
) -> Result<Vec<RatioSweepPoint>> {
    if steps < 2 {
        return Err(Error::InvalidConfig(
            "a ratio sweep needs at least 2 grid steps".to_string(),
        ));
    }
    if !log10_min.is_finite() || !log10_max.is_finite() || log10_min >= log10_max {
        return Err(Error::InvalidConfig(format!(
            "log10 grid bounds must be finite with min < max, got [{log10_min}, {log10_max}]"
        )));
    }
    let span = log10_max - log10_min;
    let grid: Vec<f64> = (0..steps)
        .map(|i| log10_min + span * i as f64 / (steps - 1) as f64)
        .collect();
    let ratios = grid
        .iter()
        .map(|&x| CostRatio::new(10f64.powf(x)))
        .collect::<Result<Vec<_>>>()?;

    let sr = sweep(ds, &ratios)?;
    let f1_choice = best_f1_threshold(&sr);
    let mut out = Vec::with_capacity(steps);
    for (&log10_ratio, &rc) in grid.iter().zip(&ratios) {
        let opt = min_cost_threshold(&sr, rc)?;
        out.push(RatioSweepPoint {
            log10_ratio,
            improvement_pct: improvement_pct(f1_choice.point.cscores[&rc], opt.point.cscores[&rc]),
        });
    }
    Ok(out)
}
