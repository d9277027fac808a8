// Runs the compiled binary against the bundled data files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ranking-metrics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn csv_rows(path: PathBuf) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn rank_two_portfolios() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "rank",
        "--input",
        &data("two_portfolio.csv"),
        "--groups",
        &data("two_portfolio_groups.csv"),
        "--metrics",
        "glr,omega",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = csv_rows(dir.path().join("leaderboard.csv"));
    let get = |e: &str, m: &str| {
        rows.iter()
            .find(|r| r[0] == e && r[1] == m)
            .map(|r| (r[2].clone(), r[3].clone()))
            .unwrap()
    };
    // P: mean 1, downside 0.5; Q: mean -1
    assert_eq!(get("P", "glr"), ("2".into(), "1".into()));
    assert_eq!(get("Q", "glr"), ("0".into(), "2".into()));
    assert_eq!(get("P", "omega").0, "3");
    assert!(dir.path().join("plot_glr.csv").exists());
}

#[test]
fn optimize_constant_level_picks_risky_asset() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "optimize",
        "--input",
        &data("two_asset.csv"),
        "--metric",
        "lvar:const:0.5",
        "--starts",
        "100",
        "--seed",
        "5",
        "--tol",
        "1e-6",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = csv_rows(dir.path().join("optimize_weights.csv"));
    let w: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(rows[0][1], "CASH");
    assert!(w[0].abs() < 1e-3 && (w[1] - 1.0).abs() < 1e-3, "{w:?}");
    let summary = csv_rows(dir.path().join("optimize_summary.csv"));
    assert!((summary[0][1].parse::<f64>().unwrap() - 0.05).abs() < 1e-6);
}

#[test]
fn rank_output_is_byte_identical_across_runs() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = run(&[
            "rank",
            "--input",
            &data("returns_demo.csv"),
            "--groups",
            &data("groups_demo.csv"),
            "--metrics",
            "glr,omega,raroc:tcvar:0.05,lvar:two_step:0.55:0.65,ce:plinear:0.75q:0.1,h,h2,w",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let read = |p: &Path| fs::read(p.join("leaderboard.csv")).unwrap();
    assert_eq!(read(dirs[0].path()), read(dirs[1].path()));
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "--seed",
        "2",
        "--trials",
        "500",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let csv = fs::read_to_string(dir.path().join("verify.csv")).unwrap();
    assert!(csv.starts_with("property,metric,trials,violations,skipped,seed,verdict"));
    assert!(csv.contains("planted_antimonotone"));
}

#[test]
fn bad_inputs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let missing = run(&[
        "rank",
        "--input",
        "/no/such/file.csv",
        "--groups",
        &data("two_portfolio_groups.csv"),
    ]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/no/such/file.csv"));

    let bad_key = run(&[
        "optimize",
        "--input",
        &data("two_asset.csv"),
        "--metric",
        "sharpe",
        "--out",
        out_dir,
    ]);
    assert_eq!(bad_key.status.code(), Some(1));

    let unknown_flag = run(&["verify", "--trails", "5"]);
    assert_eq!(unknown_flag.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
