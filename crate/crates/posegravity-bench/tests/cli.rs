//! End-to-end checks of the `posegravity` binary: the three subcommands and
//! their file formats.

use std::process::Command;

use posegravity_bench::io::{SolutionsFile, CSV_HEADER};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_posegravity"))
}

#[test]
fn solve_reads_problem_json_and_writes_solutions_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("problem.json");
    let output = dir.path().join("solutions.json");
    std::fs::write(
        &input,
        r#"{
            "gravity": [0.0, 1.0, 0.0],
            "points": [
                {"image": [0.0, 0.0, 1.0],  "world": [0.0, 0.0, 2.0]},
                {"image": [0.25, 0.1, 1.0], "world": [1.0, 0.4, 4.0]},
                {"image": [-0.3, 0.2, 1.0], "world": [-2.1, 1.4, 7.0]}
            ]
        }"#,
    )
    .unwrap();

    let status = binary()
        .args(["solve", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&output)
        .status()
        .unwrap();
    assert!(status.success());

    let solutions: SolutionsFile =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(solutions.case, "general");
    assert_eq!(solutions.solutions.len(), 1);
    let best = &solutions.solutions[0];
    // Identity-pose scene.
    for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((best.rotation[i][j] - expect).abs() < 1e-8);
        }
        assert!(best.translation[i].abs() < 1e-8);
    }
    assert!(best.loss < 1e-9);
}

#[test]
fn solve_prints_to_stdout_without_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("problem.json");
    std::fs::write(
        &input,
        r#"{
            "gravity": [0.0, 1.0, 0.0],
            "points": [
                {"image": [0.0, 0.1, 1.0], "world": [0.0, 0.5, 5.0]},
                {"image": [0.2, -0.05, 1.0], "world": [1.0, -0.25, 5.0]}
            ]
        }"#,
    )
    .unwrap();

    let out = binary()
        .args(["solve", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let solutions: SolutionsFile = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(solutions.case, "minimal");
    assert!(!solutions.solutions.is_empty());
}

#[test]
fn solve_fails_cleanly_on_degenerate_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("problem.json");
    // A single point cannot determine the translation.
    std::fs::write(
        &input,
        r#"{"gravity": [0, 1, 0], "points": [{"image": [0, 0, 1], "world": [0, 0, 5]}]}"#,
    )
    .unwrap();
    let out = binary()
        .args(["solve", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("degenerate"), "stderr: {stderr}");
}

#[test]
fn bench_writes_csv_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let status = binary()
        .args([
            "bench",
            "--config",
            "ImagePlane",
            "--points",
            "3",
            "--lines",
            "0",
            "--eps",
            "0.001",
            "--grav-noise-deg",
            "0",
            "--trials",
            "500",
            "--seed",
            "11",
            "--csv",
        ])
        .arg(&csv)
        .status()
        .unwrap();
    assert!(status.success());

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER);
    let row = lines.next().unwrap();
    assert!(row.starts_with("ImagePlane,3,0,0.001,0,500,500,"));

    // Appending keeps a single header.
    let status = binary()
        .args([
            "bench", "--config", "Planar", "--points", "0", "--lines", "4", "--trials", "200",
            "--seed", "12", "--csv",
        ])
        .arg(&csv)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(text.lines().filter(|l| *l == CSV_HEADER).count(), 1);
}

#[test]
fn oracle_check_exits_zero_on_success() {
    let out = binary()
        .args(["oracle-check", "--trials", "100", "--seed", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("oracle-check: PASS"), "stdout: {stdout}");
}
