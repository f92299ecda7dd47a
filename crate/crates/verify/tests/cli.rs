use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use massless_verify::report::Report;

const SMALL_GRID: &str = "[grid]\nr_max = 6.0\nn_r = 24\nn_theta = 16\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_massless-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_report(dir: &Path) -> Report {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(|s| s.parse().unwrap()).collect())
        .collect()
}

#[test]
fn empty_selection_passes_with_zero_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--checks", "", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_report(dir.path());
    assert_eq!(report.summary.total, 0);
    assert_eq!(report.summary.failed, 0);
}

#[test]
fn impossible_unitarity_tolerance_fails() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    fs::write(&config, "[grid]\nn_r = 16\n").unwrap();
    let out = run(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--tol",
        "unitarity=1e-15",
        "--checks",
        "unitarity,group_law",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = read_report(dir.path());
    let record = report.record("unitarity").unwrap();
    assert!(!record.pass);
    assert_eq!(record.tolerance, 1e-15);
    assert!(record.anchor.contains("inner product"));
    assert!(report.record("group_law").unwrap().pass);
    assert_eq!(report.summary.failed, 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL unitarity"));
}

#[test]
fn reports_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let config = a.path().join("run.toml");
    fs::write(&config, SMALL_GRID).unwrap();
    let checks = "cocycle_jacobian,coset_transitivity,group_law,commutator,eigen_residuals";
    for dir in [&a, &b] {
        let out = run(&[
            "verify",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            "42",
            "--checks",
            checks,
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let first = fs::read(a.path().join("report.json")).unwrap();
    let second = fs::read(b.path().join("report.json")).unwrap();
    assert_eq!(first, second);
    let report = read_report(a.path());
    assert_eq!(report.summary.seed, 42);
    assert_eq!(report.summary.total, 5);
    assert_eq!(report.summary.config_digest.len(), 64);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[grid]\nn_r = \"many\"\n").unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["verify", "--config", bad.to_str().unwrap(), "--out", out]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tol", "bogus=1", "--out", out]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tol", "unitarity=-1", "--out", out]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--checks", "nope", "--out", out]).status.code(), Some(2));
    let missing = dir.path().join("missing.toml");
    assert_eq!(run(&["verify", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cocycle_command() {
    let out = run(&["cocycle", "--z", "1", "--g", "1,1,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cocycle 0.0625"), "{text}");

    let out = run(&["cocycle", "--z", "0.3+0.4i", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let diff: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("difference "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(diff <= 1e-6);

    // det ≠ 1 and a label off the big cell are input errors.
    assert_eq!(run(&["cocycle", "--z", "1", "--g", "1,1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["cocycle", "--z", "-1", "--g", "1,1,0,1"]).status.code(), Some(2));
}

#[test]
fn spectrum_tables() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    fs::write(&config, SMALL_GRID).unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "spectrum",
        "--config",
        config.to_str().unwrap(),
        "--k",
        "1,0",
        "--k",
        "3,-4",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = rows(&out_dir.join("eigencheck.csv"));
    assert_eq!(table.len(), 2);
    assert_eq!(&table[0][..2], &[1.0, 0.0]);
    for row in &table {
        assert!(row[2..].iter().all(|r| *r <= 1e-10), "{row:?}");
    }

    let empty = dir.path().join("empty");
    let out = run(&["spectrum", "--config", config.to_str().unwrap(), "--out", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(empty.join("eigencheck.csv")).unwrap(),
        "k1,k2,res_pi1,res_pi2,res_p2\n"
    );
    assert_eq!(run(&["spectrum", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn packet_snapshots_shift_rigidly() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        format!("{SMALL_GRID}[wavepacket]\nk0 = [2.0, 0.0]\nsigma = 0.5\nn_k = 16\n"),
    )
    .unwrap();
    let out = run(&[
        "packet",
        "--config",
        config.to_str().unwrap(),
        "--beta",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let before = rows(&dir.path().join("packet_before.csv"));
    let after = rows(&dir.path().join("packet_after.csv"));
    assert_eq!(before.len(), 24 * 16);
    assert_eq!(before.len(), after.len());
    for (b, a) in before.iter().zip(&after) {
        // Matched rows: the after-sample sits one unit to the left.
        let zb = (b[0] * b[1].cos(), b[0] * b[1].sin());
        let za = (a[0] * a[1].cos(), a[0] * a[1].sin());
        assert!((zb.0 - za.0 - 1.0).abs() < 1e-12 && (zb.1 - za.1).abs() < 1e-12);
        assert!((b[2] - a[2]).abs() <= 1e-10 && (b[3] - a[3]).abs() <= 1e-10);
    }
    let spectrum = rows(&dir.path().join("spectrum.csv"));
    assert_eq!(spectrum.len(), 16 * 16);
    assert!(spectrum.iter().all(|r| r.len() == 4));
}
