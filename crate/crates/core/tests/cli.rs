//! End-to-end checks of the `commetric` binary: exit codes, CSV layout,
//! determinism across thread counts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn commetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commetric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn counterexample_prints_negative_sqrt2() {
    let out = commetric(&["counterexample"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("alpha=1: d(A,B)=0.000000000000000 d(B,C)=0.000000000000000 d(A,C)=1.414213562373095 Delta=-1.414213562373095"), "{text}");
    assert!(text.contains("Delta=-2.000000000000000"));
    assert!(text.contains("Delta=-1.189207115002721"));
}

#[test]
fn usage_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for args in [
        vec!["table1", "--trials", "0", "--out", out],
        vec!["table1", "--n", "1", "--out", out],
        vec!["table1", "--alpha", "-1", "--out", out],
        vec!["table1", "--ensemble", "normal", "--out", out],
        vec!["histogram", "--bins", "1", "--out", out],
        vec!["table1", "--n", "5,10", "--max-n", "3", "--out", out],
        vec!["bogus"],
    ] {
        let o = commetric(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn theory_rejects_non_sphere_ensembles() {
    let dir = tempfile::tempdir().unwrap();
    let o = commetric(&[
        "theory",
        "--ensemble",
        "gaussian",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unit sphere") && err.contains("gaussian"), "{err}");
    assert!(!dir.path().join("theory_vs_sim.csv").exists());
}

#[test]
fn table1_single_cell() {
    let dir = tempfile::tempdir().unwrap();
    let o = commetric(&[
        "table1", "--n", "2", "--alpha", "2", "--trials", "10000", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("table1.csv"));
    assert_eq!(
        rows[0],
        ["n", "alpha", "trials", "mean", "std_dev", "violation_rate", "theory_mean", "seed"]
    );
    assert_eq!(rows.len(), 2);
    let mean: f64 = rows[1][3].parse().unwrap();
    let sd: f64 = rows[1][4].parse().unwrap();
    assert!((mean - 0.75).abs() <= 4.0 * sd / 100.0, "mean {mean}");
    assert_eq!(rows[1][6].parse::<f64>().unwrap(), 0.75);
    assert_eq!(rows[1][7], "1592639710");
}

#[test]
fn table1_default_grid_layout() {
    let dir = tempfile::tempdir().unwrap();
    // Default grid shape, small trial count to keep the n = 500 cell cheap.
    let o = commetric(&["table1", "--trials", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("table1.csv"));
    assert_eq!(rows.len(), 31);
    let ns: Vec<&str> = rows[1..].iter().step_by(3).map(|r| r[0].as_str()).collect();
    assert_eq!(ns, ["2", "3", "4", "5", "10", "25", "50", "100", "200", "500"]);
    // No predictor for alpha = 0.5.
    assert!(rows[1..].iter().filter(|r| r[1].starts_with("5.0")).all(|r| r[6].is_empty()));
}

#[test]
fn csvs_are_identical_across_thread_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let out = dir.path().to_str().unwrap();
        let common = ["--trials", "400", "--threads", threads, "--out", out];
        let mut t1 = vec!["table1", "--n", "2,5,12"];
        t1.extend(common);
        assert!(commetric(&t1).status.success());
        let mut h = vec!["histogram", "--n", "3,9", "--bins", "17"];
        h.extend(common);
        assert!(commetric(&h).status.success());
        let mut th = vec!["theory", "--n", "4,8"];
        th.extend(common);
        assert!(commetric(&th).status.success());
    }
    for f in ["table1.csv", "hist_n3.csv", "hist_n9.csv", "theory_vs_sim.csv"] {
        let x = fs::read(a.path().join(f)).unwrap();
        let y = fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
}

#[test]
fn histogram_files_conserve_mass() {
    let dir = tempfile::tempdir().unwrap();
    let o = commetric(&["histogram", "--trials", "500", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    for n in [2, 5, 10, 25, 50, 100] {
        let rows = csv_rows(&dir.path().join(format!("hist_n{n}.csv")));
        assert_eq!(rows[0], ["bin_left", "bin_right", "count", "density"]);
        assert_eq!(rows.len(), 101);
        let total: u64 = rows[1..].iter().map(|r| r[2].parse::<u64>().unwrap()).sum();
        assert_eq!(total, 500);
        let area: f64 = rows[1..]
            .iter()
            .map(|r| {
                let w: f64 = r[1].parse::<f64>().unwrap() - r[0].parse::<f64>().unwrap();
                w * r[3].parse::<f64>().unwrap()
            })
            .sum();
        assert!((area - 1.0).abs() < 1e-9);
    }
    let manifest = fs::read_to_string(dir.path().join("run_manifest.txt")).unwrap();
    assert!(manifest.contains("ensemble=gaussian\n"));
    assert!(manifest.contains("output.hist_n0100=hist_n100.csv\n"));
}

#[test]
fn theory_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = commetric(&[
        "theory", "--n", "10,25,50,100", "--trials", "200", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("theory_vs_sim.csv"));
    assert_eq!(
        rows[0],
        [
            "n",
            "empirical_mean",
            "theory_mean",
            "empirical_std",
            "theory_std_bound",
            "empirical_violation_rate",
            "chebyshev_bound"
        ]
    );
    for r in &rows[1..] {
        let n: f64 = r[0].parse().unwrap();
        let theory: f64 = r[2].parse().unwrap();
        assert!((theory - (2.0 / n - 2.0 / n.powi(3))).abs() <= 1e-15);
    }
    let cheb100: f64 = rows[4][6].parse().unwrap();
    assert!((cheb100 - 1.8e-3).abs() < 1e-5);
}

#[test]
fn manifest_keys_are_sorted_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let o = commetric(&[
        "table1", "--n", "3", "--trials", "5", "--seed", "17", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("run_manifest.txt")).unwrap();
    let keys: Vec<&str> = text.lines().map(|l| l.split_once('=').unwrap().0).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for k in ["alpha_list", "command", "ensemble", "master_seed", "n_list", "output.table1", "timestamp_unix", "trials", "version"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert!(text.contains("master_seed=17\n"));
}
