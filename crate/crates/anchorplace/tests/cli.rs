//! Exit-code contract of the batch CLI: 0 on success, 1 when some persons
//! or instances failed, 2 on invalid input or configuration.

use std::path::Path;
use std::process::Command;

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anchorplace"))
}

fn generate(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let locations = dir.join("locations.csv");
    let plans = dir.join("plans.txt");
    let status = cli()
        .args([
            "generate",
            "--count",
            "200",
            "--persons",
            "12",
            "--seed",
            "1",
        ])
        .arg("--locations")
        .arg(&locations)
        .arg("--plans")
        .arg(&plans)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    (locations, plans)
}

#[test]
fn solve_exits_zero_on_full_success() {
    let dir = tempfile::tempdir().unwrap();
    let (locations, plans) = generate(dir.path());
    let out = dir.path().join("placed.csv");
    let report = dir.path().join("report.txt");
    let status = cli()
        .arg("solve")
        .arg("--locations")
        .arg(&locations)
        .arg("--plans")
        .arg(&plans)
        .arg("--out")
        .arg(&out)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(out.exists() && report.exists());
    let report = std::fs::read_to_string(&report).unwrap();
    assert!(report.contains("persons_failed=0"));
}

#[test]
fn solve_exits_one_when_some_persons_fail() {
    let dir = tempfile::tempdir().unwrap();
    let (locations, plans) = generate(dir.path());
    // Append a person demanding an activity type no location offers.
    let mut text = std::fs::read_to_string(&plans).unwrap();
    text.push_str("zz_doomed; home@100,100; 500; opera; 500; home@100,100\n");
    std::fs::write(&plans, text).unwrap();

    let out = dir.path().join("placed.csv");
    let output = cli()
        .arg("solve")
        .arg("--locations")
        .arg(&locations)
        .arg("--plans")
        .arg(&plans)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("zz_doomed") && stderr.contains("opera"));
    // The other persons were still placed and written.
    let placed = std::fs::read_to_string(&out).unwrap();
    assert!(placed.lines().count() > 12);
    assert!(!placed.contains("zz_doomed"));
}

#[test]
fn malformed_input_exits_two_and_names_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let (_, plans) = generate(dir.path());
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "id,x,y,types,potential\n1,0,0,shop,not_a_number\n").unwrap();

    let out = dir.path().join("placed.csv");
    let output = cli()
        .arg("solve")
        .arg("--locations")
        .arg(&bad)
        .arg("--plans")
        .arg(&plans)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("bad.csv:2:12"), "stderr was: {stderr}");
    assert!(!out.exists());
}

#[test]
fn invalid_flags_and_configs_exit_two() {
    let status = cli().arg("explode").output().unwrap();
    assert_eq!(status.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let (locations, plans) = generate(dir.path());
    let config = dir.path().join("solver.cfg");
    std::fs::write(&config, "branches=50\n").unwrap();
    let output = cli()
        .arg("solve")
        .arg("--locations")
        .arg(&locations)
        .arg("--plans")
        .arg(&plans)
        .arg("--out")
        .arg(dir.path().join("placed.csv"))
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8(output.stderr)
        .unwrap()
        .contains("unknown config key"));

    let output = cli()
        .args([
            "generate",
            "--scenario",
            "sideways:all",
            "--locations",
            "x",
            "--plans",
            "y",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn validate_exits_zero_when_solver_matches_oracle() {
    let output = cli()
        .args(["validate", "--instances", "10", "--seed", "9"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("10 instances, 0 mismatches"));
}

#[test]
fn sweep_writes_one_row_per_branch_width() {
    let dir = tempfile::tempdir().unwrap();
    let (locations, plans) = generate(dir.path());
    let out = dir.path().join("sweep.csv");
    let status = cli()
        .args(["sweep", "--branches", "1,5"])
        .arg("--locations")
        .arg(&locations)
        .arg("--plans")
        .arg(&plans)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "branches,mean_deviation_m,runtime_s");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,") && lines[2].starts_with("5,"));
}
