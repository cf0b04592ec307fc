//! Command-line front end for cost-aware classifier evaluation.
//!
//! Every number this tool emits is produced by the `cscore` library and
//! serialized without re-rounding, so repeated invocations on the same
//! inputs are byte-identical. Exit codes: 0 success, 2 input parse or
//! validation failure, 3 degenerate dataset (a class with no examples),
//! 4 infeasible geometry request.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use cscore::{
    aggregate, best_f1_threshold, build_report, dataset_csv, f1_curves_csv, file_digest, generate,
    isocost_csv, load_dataset, min_cost_threshold, per_class_cscores, points_csv, ratio_sweep,
    ratio_sweep_csv, render_report, sample_f1_curve, sample_isocost, sweep, sweep_json,
    AggregationMethod, ClassCostProfile, CostRatio, Error, MulticlassScoredExample, Objective,
    ReportFormat, Result, SynthConfig, ThresholdChoice,
};

#[derive(Parser)]
#[command(
    name = "cscore",
    version,
    about = "Cost-aware threshold selection and evaluation for scored binary classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every candidate threshold and write the sweep as JSON.
    Sweep {
        /// Dataset CSV with a `score,label` header.
        #[arg(long)]
        input: PathBuf,
        /// Cost ratios to evaluate, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        ratios: Vec<f64>,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
        /// Also write one CSV row per candidate threshold.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Pick one threshold by an objective and print it as JSON.
    Choose {
        /// Dataset CSV with a `score,label` header.
        #[arg(long)]
        input: PathBuf,
        /// What to optimize.
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// Cost ratio; required when the objective is cscore.
        #[arg(
            long,
            required_if_eq("objective", "cscore"),
            allow_negative_numbers = true
        )]
        ratio: Option<f64>,
    },
    /// Compare best-F1 against minimum-cost thresholding at each ratio.
    Compare {
        /// Dataset CSV with a `score,label` header.
        #[arg(long)]
        input: PathBuf,
        /// Cost ratios to evaluate, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        ratios: Vec<f64>,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Cost saved by cost-aware thresholding across a log-spaced ratio grid.
    RatioSweep {
        /// Dataset CSV with a `score,label` header.
        #[arg(long)]
        input: PathBuf,
        /// Smallest log10 cost ratio on the grid.
        #[arg(long, allow_negative_numbers = true)]
        log10_min: f64,
        /// Largest log10 cost ratio on the grid.
        #[arg(long, allow_negative_numbers = true)]
        log10_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long)]
        steps: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample constant-cost curves in precision/recall space.
    Isocost {
        /// Cost ratio the curves are drawn for.
        #[arg(long)]
        ratio: f64,
        /// Cost levels, one curve each, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        levels: Vec<f64>,
        /// Recall grid density per curve.
        #[arg(long)]
        points: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample constant-F1 curves in precision/recall space.
    F1Curves {
        /// F1 levels, one curve each, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        levels: Vec<f64>,
        /// Recall grid density per curve.
        #[arg(long)]
        points: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a synthetic bimodal scored dataset.
    Synth {
        /// Number of examples.
        #[arg(long)]
        n: usize,
        /// Fraction of positive examples, in (0, 1).
        #[arg(long)]
        positive_fraction: f64,
        /// Distance between the class score modes.
        #[arg(long)]
        separation: f64,
        /// Probability that an example's mode is swapped, in [0, 1].
        #[arg(long)]
        noise_overlap: f64,
        /// RNG seed; equal seeds give byte-identical output.
        #[arg(long)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-class cost scores of a multiclass problem, one-vs-rest.
    Multiclass {
        /// JSON-lines file: one {"scores": [...], "true_class": k} per line.
        #[arg(long)]
        input: PathBuf,
        /// Per-class cost ratios, comma separated, one per class.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        ratios: Vec<f64>,
        /// Per-class decision thresholds, comma separated, one per class.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        thresholds: Vec<f64>,
        /// How to combine per-class scores.
        #[arg(long, value_enum, default_value = "arithmetic")]
        aggregate: AggregateArg,
        /// Per-class weights summing to 1; required for weighted aggregation.
        #[arg(
            long,
            value_delimiter = ',',
            required_if_eq("aggregate", "weighted"),
            allow_negative_numbers = true
        )]
        weights: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    F1,
    Cscore,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum AggregateArg {
    Arithmetic,
    Weighted,
    Harmonic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 3 for a dataset or class with no members of some label, 4 for
/// geometry that cannot be satisfied, 2 for every other input problem.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegenerateDataset | Error::DegenerateClass { .. } => 3,
        Error::InfeasiblePoint { .. } | Error::EmptyCurve { .. } => 4,
        _ => 2,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Sweep {
            input,
            ratios,
            out,
            points,
        } => {
            let ds = load_dataset(&input)?;
            let digest = file_digest(&input)?;
            let sr = sweep(&ds, &cost_ratios(&ratios)?)?;
            std::fs::write(&out, sweep_json(&sr, &ds, digest))?;
            if let Some(points_path) = points {
                std::fs::write(&points_path, points_csv(&sr))?;
            }
            Ok(())
        }
        Command::Choose {
            input,
            objective,
            ratio,
        } => {
            let ds = load_dataset(&input)?;
            let objective = match objective {
                ObjectiveArg::F1 => Objective::MaxF1,
                // clap guarantees the ratio is present here.
                ObjectiveArg::Cscore => Objective::MinCost(CostRatio::new(ratio.unwrap())?),
            };
            let swept_ratio = match objective {
                Objective::MaxF1 => CostRatio::new(1.0)?,
                Objective::MinCost(rc) => rc,
            };
            let sr = sweep(&ds, &[swept_ratio])?;
            let choice = match objective {
                Objective::MaxF1 => best_f1_threshold(&sr),
                Objective::MinCost(rc) => min_cost_threshold(&sr, rc)?,
            };
            print!("{}", choice_json(&choice));
            Ok(())
        }
        Command::Compare {
            input,
            ratios,
            format,
        } => {
            let ds = load_dataset(&input)?;
            let digest = file_digest(&input)?;
            let report = build_report(&ds, &cost_ratios(&ratios)?, digest)?;
            let format = match format {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Table => ReportFormat::Table,
            };
            print!("{}", render_report(&report, format));
            Ok(())
        }
        Command::RatioSweep {
            input,
            log10_min,
            log10_max,
            steps,
            out,
        } => {
            let ds = load_dataset(&input)?;
            let points = ratio_sweep(&ds, log10_min, log10_max, steps)?;
            std::fs::write(&out, ratio_sweep_csv(&points))?;
            Ok(())
        }
        Command::Isocost {
            ratio,
            levels,
            points,
            out,
        } => {
            let rc = CostRatio::new(ratio)?;
            let curves = levels
                .iter()
                .map(|&level| sample_isocost(level, rc, points))
                .collect::<Result<Vec<_>>>()?;
            std::fs::write(&out, isocost_csv(&curves))?;
            Ok(())
        }
        Command::F1Curves {
            levels,
            points,
            out,
        } => {
            let curves = levels
                .iter()
                .map(|&level| sample_f1_curve(level, points).map(|pts| (level, pts)))
                .collect::<Result<Vec<_>>>()?;
            std::fs::write(&out, f1_curves_csv(&curves))?;
            Ok(())
        }
        Command::Synth {
            n,
            positive_fraction,
            separation,
            noise_overlap,
            seed,
            out,
        } => {
            let ds = generate(&SynthConfig {
                n,
                positive_fraction,
                separation,
                noise_overlap,
                seed,
            })?;
            std::fs::write(&out, dataset_csv(&ds))?;
            Ok(())
        }
        Command::Multiclass {
            input,
            ratios,
            thresholds,
            aggregate: method,
            weights,
        } => {
            let ds = load_multiclass(&input)?;
            let profile = ClassCostProfile::new(cost_ratios(&ratios)?);
            let per_class = per_class_cscores(&ds, &profile, &thresholds)?;
            let (method, method_name) = match method {
                AggregateArg::Arithmetic => (AggregationMethod::Arithmetic, "arithmetic"),
                // clap guarantees the weights are present here.
                AggregateArg::Weighted => {
                    (AggregationMethod::Weighted(weights.unwrap()), "weighted")
                }
                AggregateArg::Harmonic => (AggregationMethod::Harmonic, "harmonic"),
            };
            let combined = aggregate(&per_class, &method)?;
            print!(
                "{}",
                multiclass_json(&profile, &thresholds, &per_class, method_name, combined)
            );
            Ok(())
        }
    }
}

fn cost_ratios(values: &[f64]) -> Result<Vec<CostRatio>> {
    values.iter().map(|&r| CostRatio::new(r)).collect()
}

#[derive(Serialize)]
struct ChoiceOutput {
    objective: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    threshold: f64,
    precision: Option<f64>,
    recall: f64,
    f1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cscore: Option<f64>,
}

fn choice_json(choice: &ThresholdChoice) -> String {
    let (objective, ratio) = match choice.objective {
        Objective::MaxF1 => ("f1", None),
        Objective::MinCost(rc) => ("cscore", Some(rc)),
    };
    let output = ChoiceOutput {
        objective,
        ratio: ratio.map(|rc| rc.value()),
        threshold: choice.threshold,
        precision: choice.point.metrics.precision,
        recall: choice.point.metrics.recall,
        f1: choice.point.metrics.f1,
        cscore: ratio.map(|rc| choice.point.cscores[&rc]),
    };
    let mut out = serde_json::to_string_pretty(&output).expect("choice serialization cannot fail");
    out.push('\n');
    out
}

#[derive(Deserialize)]
struct MulticlassRow {
    scores: Vec<f64>,
    true_class: usize,
}

/// Reads JSON-lines multiclass predictions; blank lines are skipped and
/// parse errors carry 1-based line numbers.
fn load_multiclass(path: &Path) -> Result<Vec<MulticlassScoredExample>> {
    let content = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (index, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: MulticlassRow = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: index + 1,
            message: e.to_string(),
        })?;
        out.push(MulticlassScoredExample::new(row.scores, row.true_class)?);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no examples in input".to_string(),
        });
    }
    Ok(out)
}

#[derive(Serialize)]
struct PerClassOutput {
    class: usize,
    ratio: f64,
    threshold: f64,
    cscore: f64,
}

#[derive(Serialize)]
struct MulticlassOutput {
    per_class: Vec<PerClassOutput>,
    method: &'static str,
    aggregate: f64,
    version: String,
}

fn multiclass_json(
    profile: &ClassCostProfile,
    thresholds: &[f64],
    per_class: &[f64],
    method: &'static str,
    aggregate: f64,
) -> String {
    let output = MulticlassOutput {
        per_class: per_class
            .iter()
            .enumerate()
            .map(|(class, &cscore)| PerClassOutput {
                class,
                ratio: profile.ratios()[class].value(),
                threshold: thresholds[class],
                cscore,
            })
            .collect(),
        method,
        aggregate,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let mut out =
        serde_json::to_string_pretty(&output).expect("multiclass serialization cannot fail");
    out.push('\n');
    out
}
