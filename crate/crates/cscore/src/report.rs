//! Dataset files, digests, and rendered evaluation reports.
//!
//! The functions here are the single source of every number and byte the
//! command-line tool emits, so that equal inputs always produce identical
//! output files. Datasets are two-column CSV (`score,label`, labels 0/1),
//! reports render as JSON (full precision) or a fixed-width table (6
//! significant digits), and the dataset digest is the SHA-256 of the
//! file's raw bytes.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::isocost::{IsocostCurve, PrPoint};
use crate::metrics::CostRatio;
use crate::sweep::{
    improvement_report, sweep, RatioSweepPoint, ScoredDataset, SweepResult, ThresholdChoice,
};

/// Reads a `score,label` CSV file. The header is mandatory, scores must
/// parse as reals in [0, 1], labels must be exactly 0 or 1, and error
/// positions are reported as 1-based line numbers including the header.
pub fn load_dataset(path: &Path) -> Result<ScoredDataset> {
    let file = std::fs::File::open(path)?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers = rdr.headers().map_err(csv_error)?;
    if headers.iter().collect::<Vec<_>>() != ["score", "label"] {
        return Err(Error::Parse {
            line: 1,
            message: "expected header 'score,label'".to_string(),
        });
    }

    let mut examples = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or_default();
        let score_field = record.get(0).unwrap_or_default();
        let score: f64 = score_field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("cannot parse score '{score_field}'"),
        })?;
        if !score.is_finite() || !(0.0..=1.0).contains(&score) {
            return Err(Error::ScoreRange { line, value: score });
        }
        let positive = match record.get(1).unwrap_or_default() {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("label must be 0 or 1, got '{other}'"),
                })
            }
        };
        examples.push(crate::sweep::ScoredExample::new(score, positive)?);
    }
    ScoredDataset::new(examples)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or_default();
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

/// Renders a dataset in the same CSV format `load_dataset` reads. Scores
/// print with shortest round-trip formatting, so writing and re-reading
/// reproduces the dataset exactly.
pub fn dataset_csv(ds: &ScoredDataset) -> String {
    let mut out = String::from("score,label\n");
    for e in ds.examples() {
        out.push_str(&format!("{},{}\n", e.score(), u8::from(e.is_positive())));
    }
    out
}

/// Lowercase hex SHA-256 of a file's raw bytes.
pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    let hash = Sha256::digest(&bytes);
    let mut out = String::with_capacity(64);
    for byte in hash {
        out.push_str(&format!("{byte:02x}"));
    }
    Ok(out)
}

/// Size, class balance, and content digest of an evaluated dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSummary {
    pub n: u64,
    pub p: u64,
    pub neg: u64,
    pub base_rate: f64,
    pub digest: String,
}

/// The operating point chosen by maximizing F1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct F1ChoiceSummary {
    pub threshold: f64,
    pub precision: Option<f64>,
    pub recall: f64,
    pub f1: f64,
}

/// The operating point chosen by minimizing the cost score at one ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostChoiceSummary {
    pub ratio: f64,
    pub threshold: f64,
    pub precision: Option<f64>,
    pub recall: f64,
    pub cscore: f64,
}

/// Cost comparison of the two choices at one ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImprovementSummary {
    pub ratio: f64,
    pub cscore_at_f1: f64,
    pub cscore_at_opt: f64,
    pub improvement_pct: f64,
}

/// Everything the `compare` command reports for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub dataset: DatasetSummary,
    pub f1_choice: F1ChoiceSummary,
    pub cost_choices: Vec<CostChoiceSummary>,
    pub improvements: Vec<ImprovementSummary>,
    pub version: String,
}

/// Output form of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

/// Sweeps the dataset and compares best-F1 against minimum-cost
/// thresholding at each ratio, in the order the ratios are given.
pub fn build_report(ds: &ScoredDataset, ratios: &[CostRatio], digest: String) -> Result<Report> {
    let sr = sweep(ds, ratios)?;
    let imp = improvement_report(&sr, ratios)?;
    let f1_point = &imp.f1_choice.point;
    Ok(Report {
        dataset: dataset_summary(ds, digest),
        f1_choice: F1ChoiceSummary {
            threshold: imp.f1_choice.threshold,
            precision: f1_point.metrics.precision,
            recall: f1_point.metrics.recall,
            f1: f1_point.metrics.f1,
        },
        cost_choices: imp
            .entries
            .iter()
            .map(|e| cost_choice_summary(e.ratio, &e.cost_choice))
            .collect(),
        improvements: imp
            .entries
            .iter()
            .map(|e| ImprovementSummary {
                ratio: e.ratio.value(),
                cscore_at_f1: e.cscore_at_f1,
                cscore_at_opt: e.cscore_at_opt,
                improvement_pct: e.improvement_pct,
            })
            .collect(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn dataset_summary(ds: &ScoredDataset, digest: String) -> DatasetSummary {
    DatasetSummary {
        n: ds.len() as u64,
        p: ds.positives() as u64,
        neg: ds.negatives() as u64,
        base_rate: ds.positives() as f64 / ds.len() as f64,
        digest,
    }
}

fn cost_choice_summary(ratio: CostRatio, choice: &ThresholdChoice) -> CostChoiceSummary {
    CostChoiceSummary {
        ratio: ratio.value(),
        threshold: choice.threshold,
        precision: choice.point.metrics.precision,
        recall: choice.point.metrics.recall,
        cscore: choice.point.cscores[&ratio],
    }
}

/// Renders a report deterministically: equal reports produce identical
/// bytes in either format.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            out.push('\n');
            out
        }
        ReportFormat::Table => render_table(report),
    }
}

fn render_table(report: &Report) -> String {
    let d = &report.dataset;
    let mut out = format!(
        "dataset: n={} p={} neg={} base_rate={}\ndigest: {}\n\n",
        d.n,
        d.p,
        d.neg,
        sig6(d.base_rate),
        d.digest
    );
    out.push_str(&format!(
        "{:<10} {:>12} {:>10} {:>10} {:>12} {:>12} {:>10} {:>10} {:>12} {:>14}\n",
        "ratio",
        "f1_thresh",
        "f1_prec",
        "f1_recall",
        "cscore_f1",
        "cost_thresh",
        "cost_prec",
        "cost_recall",
        "cscore_opt",
        "improvement%"
    ));
    let f1 = &report.f1_choice;
    for (choice, imp) in report.cost_choices.iter().zip(&report.improvements) {
        out.push_str(&format!(
            "{:<10} {:>12} {:>10} {:>10} {:>12} {:>12} {:>10} {:>10} {:>12} {:>14}\n",
            sig6(imp.ratio),
            sig6(f1.threshold),
            opt_sig6(f1.precision),
            sig6(f1.recall),
            sig6(imp.cscore_at_f1),
            sig6(choice.threshold),
            opt_sig6(choice.precision),
            sig6(choice.recall),
            sig6(imp.cscore_at_opt),
            sig6(imp.improvement_pct)
        ));
    }
    out
}

/// Six significant digits, plain decimal notation.
fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0.00000".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

fn opt_sig6(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), sig6)
}

/// Full sweep as JSON: dataset summary, evaluated ratios, and every
/// candidate point with its matrix, rates, and per-ratio cost scores.
pub fn sweep_json(sr: &SweepResult, ds: &ScoredDataset, digest: String) -> String {
    #[derive(Serialize)]
    struct CscoreEntry {
        ratio: f64,
        cscore: f64,
    }

    #[derive(Serialize)]
    struct PointEntry {
        threshold: f64,
        tp: u64,
        fp: u64,
        #[serde(rename = "fn")]
        fn_: u64,
        tn: u64,
        precision: Option<f64>,
        recall: f64,
        f1: f64,
        cscores: Vec<CscoreEntry>,
    }

    #[derive(Serialize)]
    struct SweepEntry {
        dataset: DatasetSummary,
        ratios: Vec<f64>,
        points: Vec<PointEntry>,
        version: String,
    }

    let points = sr
        .points()
        .iter()
        .map(|pt| PointEntry {
            threshold: pt.threshold,
            tp: pt.matrix.tp() as u64,
            fp: pt.matrix.fp() as u64,
            fn_: pt.matrix.fn_() as u64,
            tn: pt.matrix.tn() as u64,
            precision: pt.metrics.precision,
            recall: pt.metrics.recall,
            f1: pt.metrics.f1,
            cscores: pt
                .cscores
                .iter()
                .map(|(rc, &cscore)| CscoreEntry {
                    ratio: rc.value(),
                    cscore,
                })
                .collect(),
        })
        .collect();

    let entry = SweepEntry {
        dataset: dataset_summary(ds, digest),
        ratios: sr.ratios().iter().map(|r| r.value()).collect(),
        points,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let mut out = serde_json::to_string_pretty(&entry).expect("sweep serialization cannot fail");
    out.push('\n');
    out
}

/// Sweep points as CSV: one row per candidate threshold, one trailing
/// cscore column per evaluated ratio. Undefined precision renders empty.
pub fn points_csv(sr: &SweepResult) -> String {
    let mut out = String::from("threshold,tp,fp,fn,tn,precision,recall,f1");
    for rc in sr.ratios() {
        out.push_str(&format!(",cscore_{rc}"));
    }
    out.push('\n');
    for pt in sr.points() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}",
            pt.threshold,
            pt.matrix.tp() as u64,
            pt.matrix.fp() as u64,
            pt.matrix.fn_() as u64,
            pt.matrix.tn() as u64,
            pt.metrics
                .precision
                .map_or_else(String::new, |p| p.to_string()),
            pt.metrics.recall,
            pt.metrics.f1
        ));
        for rc in sr.ratios() {
            out.push_str(&format!(",{}", pt.cscores[rc]));
        }
        out.push('\n');
    }
    out
}

/// Ratio sweep as CSV with `log10_ratio,improvement_pct` columns.
pub fn ratio_sweep_csv(points: &[RatioSweepPoint]) -> String {
    let mut out = String::from("log10_ratio,improvement_pct\n");
    for pt in points {
        out.push_str(&format!("{},{}\n", pt.log10_ratio, pt.improvement_pct));
    }
    out
}

/// Sampled isocost curves as CSV with `level,recall,precision` columns.
pub fn isocost_csv(curves: &[IsocostCurve]) -> String {
    let mut out = String::from("level,recall,precision\n");
    for curve in curves {
        for pt in &curve.points {
            out.push_str(&format!("{},{},{}\n", curve.level, pt.recall, pt.precision));
        }
    }
    out
}

/// Sampled constant-F1 curves as CSV with `level,recall,precision` columns.
pub fn f1_curves_csv(curves: &[(f64, Vec<PrPoint>)]) -> String {
    let mut out = String::from("level,recall,precision\n");
    for (level, points) in curves {
        for pt in points {
            out.push_str(&format!("{},{},{}\n", level, pt.recall, pt.precision));
        }
    }
    out
}
