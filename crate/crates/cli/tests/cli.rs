use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn wwlab(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wwlab"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn wwlab")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run_config(dir: &Path, text: &str, env: &[(&str, &str)]) -> (Output, PathBuf) {
    let cfg = write_config(dir, "scenario.toml", text);
    let out = dir.join("out");
    let o = wwlab(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], env);
    (o, out)
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn list_has_at_least_nine_scenarios() {
    let o = wwlab(&["list"], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() >= 9);
}

#[test]
fn describe_cites_theorems() {
    let o = wwlab(&["describe", "ww-doubling"], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Theorem 1.6"));
    let o = wwlab(&["describe", "iclass-sandwich"], &[]);
    assert!(stdout(&o).contains("Theorem 1.7 / Theorem 3.3"));
    assert_eq!(code(&wwlab(&["describe", "no-such-scenario"], &[])), 2);
}

#[test]
fn me_counterexample_errors_are_tiny() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("me");
    let o = wwlab(&["run", "ww-me-counterexample", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = read_csv(&out.join("twisted.csv"));
    assert_eq!(rows.len(), 8 * 3);
    assert!(column(&h, &rows, "err").iter().all(|&e| e <= 1e-9));
}

#[test]
fn ualpha_averages_are_one() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run_config(
        dir.path(),
        "name = \"ualpha-polynomial\"\ncheckpoints = [10, 1000, 20000]\nseeds = [3, 4]\n",
        &[],
    );
    assert_eq!(code(&o), 0);
    let (h, rows) = read_csv(&out.join("polynomial.csv"));
    assert_eq!(rows.len(), 6);
    for (re, im) in column(&h, &rows, "avg_re").into_iter().zip(column(&h, &rows, "avg_im")) {
        assert!((re - 1.0).abs() <= 1e-6 && im.abs() <= 1e-6);
    }
}

/// `|B ∩ [1, N]|` by direct enumeration.
fn b_count(n: u64) -> u64 {
    (1..=n)
        .filter(|&k| {
            let mut j = 4u64;
            let mut inside = false;
            while j <= k {
                inside |= k < 2 * j;
                j *= 4;
            }
            inside
        })
        .count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn reduced(num: u64, den: u64) -> String {
    let g = gcd(num, den);
    format!("{}/{}", num / g, den / g)
}

#[test]
fn dyadic_table_matches_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run_config(dir.path(), "name = \"dyadic-not-mean-ergodic\"\noperator = \"dyadic-t\"\n[params]\nm_max = 6\n", &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = read_csv(&out.join("dyadic.csv"));
    let odd = h.iter().position(|c| c == "avg_odd").unwrap();
    let even = h.iter().position(|c| c == "avg_even").unwrap();
    assert_eq!(rows.len(), 6);
    for (i, r) in rows.iter().enumerate() {
        let m = i as u32 + 1;
        let (no, ne) = (1u64 << (2 * m + 1), 1u64 << (2 * m + 2));
        assert_eq!(r[odd], reduced(b_count(no), 2 * no));
        assert_eq!(r[even], reduced(b_count(ne), 2 * ne));
    }
    assert_eq!(rows[4][odd], "341/1024");
}

fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn output_is_byte_identical_across_worker_counts() {
    let text = "name = \"ww-doubling\"\ncheckpoints = [64, 256, 1024]\nseeds = [0, 1, 2, 3, 4]\n";
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (oa, outa) = run_config(a.path(), text, &[("WWLAB_WORKERS", "1")]);
    let (ob, outb) = run_config(b.path(), text, &[("WWLAB_WORKERS", "3")]);
    assert_eq!(code(&oa), 0);
    assert_eq!(code(&ob), 0);
    let (ta, tb) = (tree(&outa), tree(&outb));
    assert_eq!(ta.len(), 5);
    assert_eq!(ta, tb);
}

#[test]
fn manifest_hashes_config_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run_config(dir.path(), "name = \"iclass-sandwich\"\nseeds = [11]\n[params]\ninstances = 12\n", &[]);
    assert_eq!(code(&o), 0);
    let m: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    let config = fs::read(out.join("config.toml")).unwrap();
    assert_eq!(m["config_sha256"], hex::encode(Sha256::digest(&config)));
    assert_eq!(m["seeds"], serde_json::json!([11]));
    for f in m["files"].as_array().unwrap() {
        let bytes = fs::read(out.join(f["name"].as_str().unwrap())).unwrap();
        assert_eq!(f["sha256"], hex::encode(Sha256::digest(&bytes)));
    }
    let bounds: serde_json::Value = serde_json::from_slice(&fs::read(out.join("bounds.json")).unwrap()).unwrap();
    let bounds = bounds.as_array().unwrap();
    assert_eq!(bounds.len(), 12);
    for b in bounds {
        assert!(b["lower"].as_f64().unwrap() <= b["upper"].as_f64().unwrap());
        assert!(b["witness"]["weights"].is_array());
    }
}

#[test]
fn config_errors_exit_2_before_computing() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        "name = \"no-such-scenario\"\n",
        "name = \"ww-doubling\"\noperator = \"koopman-tent\"\n",
        "name = \"ww-doubling\"\noperator = \"m-e\"\n",
        "name = \"ww-doubling\"\nobservable = \"gaussian\"\n",
        "name = \"ww-doubling\"\nbogus = 1\n",
        "name = \"ww-doubling\"\n[params]\ninstances = 3\n",
        "name = \"ww-doubling\"\ncheckpoints = [64, 32]\n",
        "name = \"mixing-profiles\"\noperator = \"mult-koopman-rotation\"\nobservable = \"exp\"\n",
        "name = \"dyadic-not-mean-ergodic\"\nseeds = [1]\n",
        "not toml at all",
    ] {
        let (o, out) = run_config(dir.path(), text, &[]);
        assert_eq!(code(&o), 2, "config {text:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!out.exists(), "artifacts written for {text:?}");
    }
    assert_eq!(code(&wwlab(&["run", "no-such-scenario"], &[])), 2);
}

#[test]
fn resource_caps_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    for text in [
        "name = \"ww-doubling\"\ncheckpoints = [1073741824]\n",
        "name = \"iclass-sandwich\"\n[params]\nmax_n = 9\n",
        "name = \"dyadic-not-mean-ergodic\"\n[params]\nm_max = 13\n",
    ] {
        let (o, _) = run_config(dir.path(), text, &[]);
        assert_eq!(code(&o), 3, "config {text:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn failing_bound_exits_1_with_report() {
    let dir = tempfile::tempdir().unwrap();
    // A rotation orbit does not decay.
    let (o, out) = run_config(
        dir.path(),
        "name = \"ww-doubling\"\noperator = \"koopman-rotation\"\ncheckpoints = [256, 1024]\nseeds = [0, 1, 2]\n",
        &[],
    );
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("assertion failed"));
    assert!(out.join("median.csv").exists());
}

#[test]
fn mixing_profile_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run_config(
        dir.path(),
        "name = \"mixing-profiles\"\noperator = \"koopman-rotation\"\n[params]\nh_max = 64\n",
        &[],
    );
    assert_eq!(code(&o), 0);
    let (h, rows) = read_csv(&out.join("profile-koopman-rotation-seed0.csv"));
    assert_eq!(h, ["H", "ergodic_avg_re", "ergodic_avg_im", "abs_avg", "tail_sup"]);
    assert_eq!(column(&h, &rows, "H"), [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0]);
    // |<T^h e, e>| = 1 for a rotation.
    assert!(column(&h, &rows, "abs_avg").iter().all(|a| (a - 1.0).abs() < 1e-12));
}
