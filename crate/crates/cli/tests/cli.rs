//! End-to-end tests of the `cohstab` binary: stdout contents, exit codes,
//! and byte-for-byte determinism of repeated invocations.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("process exits normally")
}

#[test]
fn pairing_of_the_exceptional_class_with_itself_is_one() {
    let out = run(&["pairing", "1,3,2", "1,3,2", "--genus", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn pairing_of_a_point_class_with_itself_is_one() {
    let out = run(&["pairing", "0,0,1", "0,0,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn pairing_rejects_a_two_entry_class() {
    let out = run(&["pairing", "1,3", "1,3,2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn refined_bound_hits_the_override_values() {
    let out = run(&["bn", "3", "--refined"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n");

    let out = run(&["bn", "0", "--refined"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn general_bound_differs_from_the_refined_one_at_three() {
    let out = run(&["bn", "3", "--genus", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "5/2\n");
}

#[test]
fn refined_bound_accepts_exact_decimal_input() {
    let out = run(&["bn", "2.25", "--refined"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "17/12\n");
}

#[test]
fn refined_flag_requires_genus_four() {
    let out = run(&["bn", "3", "--refined", "--genus", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn main_scan_reports_walls_only_at_the_chamber_boundary() {
    let out = run(&["scan", "-1,-2,-1", "--b", "3"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let walls = report["walls"].as_array().expect("walls array");
    let finite: Vec<&serde_json::Value> = walls
        .iter()
        .filter(|wall| wall["kind"] == "finite_wall")
        .collect();
    assert!(!finite.is_empty());
    for wall in &finite {
        assert_eq!(wall["w"], "2", "stray interior wall: {wall}");
    }
    assert!(
        finite
            .iter()
            .any(|wall| wall["destabilizer"] == serde_json::json!([0, 1, 1])),
        "boundary wall against (0,1,1) missing"
    );
    let kernel: Vec<&serde_json::Value> = walls
        .iter()
        .filter(|wall| wall["kind"] == "kernel_boundary")
        .collect();
    assert_eq!(kernel.len(), 1);
    assert_eq!(kernel[0]["destabilizer"], serde_json::json!([1, 3, 2]));
}

#[test]
fn widened_scan_range_picks_up_the_lower_wall() {
    let out = run(&["scan", "-1,-2,-1", "--b", "3", "--w-range", "1,10"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let walls = report["walls"].as_array().expect("walls array");
    assert!(
        walls.iter().any(|wall| wall["w"] == "1"
            && wall["destabilizer"] == serde_json::json!([0, 1, 0])
            && wall["kind"] == "finite_wall"),
        "wall at w = 1 against (0,1,0) missing"
    );
}

#[test]
fn scan_rejects_a_class_on_the_vertical_line() {
    let out = run(&["scan", "1,3,0", "--b", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn scan_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("cohstab-cli-test-scan");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("report.json");
    let out = run(&[
        "scan",
        "-1,-2,-1",
        "--b",
        "3",
        "--out",
        path.to_str().expect("UTF-8 path"),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    let direct = run(&["scan", "-1,-2,-1", "--b", "3"]);
    let written = std::fs::read_to_string(&path).expect("report written");
    assert_eq!(written, stdout(&direct));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_passes_at_default_settings() {
    let out = run(&["verify", "--r-max", "200"]);
    assert_eq!(code(&out), 0, "verify failed:\n{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    for line in text.lines() {
        assert!(line.contains(": pass ("), "unexpected line: {line}");
    }
}

#[test]
fn verify_rejects_other_genera() {
    let out = run(&["verify", "--genus", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn plot_overlay_contains_the_tangency_row() {
    let out = run(&["plot", "--range", "-1,7", "--step", "1/20", "--overlay"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,bound,overlay"));
    assert!(
        text.lines().any(|line| line == "3,2,19/10"),
        "tangency row missing"
    );
}

#[test]
fn degenerate_plot_range_yields_a_single_row() {
    let out = run(&["plot", "--range", "0,0", "--step", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "x,bound\n0,1\n");
}

#[test]
fn plot_rejects_a_zero_step() {
    let out = run(&["plot", "--step", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn plot_json_format_mirrors_the_csv_rows() {
    let csv = run(&["plot", "--range", "0,2", "--step", "1/2"]);
    let json = run(&["plot", "--range", "0,2", "--step", "1/2", "--format", "json"]);
    assert_eq!(code(&csv), 0);
    assert_eq!(code(&json), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json)).expect("valid JSON");
    let rows = parsed["rows"].as_array().expect("rows array");
    // CSV has one header line followed by one line per sample row.
    assert_eq!(stdout(&csv).lines().count(), rows.len() + 1);
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for args in [
        vec!["scan", "-1,-2,-1", "--b", "3", "--w-range", "1,10"],
        vec!["plot", "--range", "-1,7", "--step", "1/8", "--overlay", "--float"],
        vec!["verify", "--r-max", "50"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}
