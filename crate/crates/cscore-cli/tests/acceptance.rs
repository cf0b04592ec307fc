//! Acceptance check for the command-line surface: the tool's JSON output
//! is the library's output, byte for byte, run after run.

use std::path::Path;
use std::process::Command;

use cscore::{
    build_report, file_digest, generate, render_report, CostRatio, ReportFormat, SynthConfig,
};

fn cscore_bin(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cscore"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

/// Criterion 11: a generated dataset compared through the CLI re-parses
/// to exactly the report the library builds for the same inputs, and
/// repeated runs are byte-identical.
#[test]
fn ac11_cli_compare_round_trips_library_values_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("synth.csv");
    let csv_arg = csv.to_str().unwrap();

    let synth_args = [
        "synth",
        "--n",
        "500",
        "--positive-fraction",
        "0.2",
        "--separation",
        "0.6",
        "--noise-overlap",
        "0.15",
        "--seed",
        "77",
        "--out",
        csv_arg,
    ];
    let synth = cscore_bin(&synth_args, dir.path());
    assert!(synth.status.success(), "synth failed: {synth:?}");

    let compare_args = ["compare", "--input", csv_arg, "--ratios", "0.1,1,10"];
    let first = cscore_bin(&compare_args, dir.path());
    assert!(first.status.success(), "compare failed: {first:?}");
    let second = cscore_bin(&compare_args, dir.path());
    assert_eq!(
        first.stdout, second.stdout,
        "repeated runs must be byte-identical"
    );

    // The library builds the same report directly from the same inputs.
    let ds = generate(&SynthConfig {
        n: 500,
        positive_fraction: 0.2,
        separation: 0.6,
        noise_overlap: 0.15,
        seed: 77,
    })
    .unwrap();
    let ratios: Vec<CostRatio> = [0.1, 1.0, 10.0]
        .iter()
        .map(|&r| CostRatio::new(r).unwrap())
        .collect();
    let report = build_report(&ds, &ratios, file_digest(&csv).unwrap()).unwrap();
    let rendered = render_report(&report, ReportFormat::Json);
    assert_eq!(
        String::from_utf8(first.stdout.clone()).unwrap(),
        rendered,
        "CLI bytes must equal the library rendering"
    );

    // The emitted JSON parses back to the very values the library holds.
    let cli_value: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let lib_value = serde_json::to_value(&report).unwrap();
    assert_eq!(cli_value, lib_value);

    assert_eq!(cli_value["dataset"]["n"], 500);
    assert_eq!(cli_value["dataset"]["p"], 100);
    assert_eq!(
        cli_value["improvements"].as_array().unwrap().len(),
        3,
        "one improvement entry per requested ratio"
    );
}
