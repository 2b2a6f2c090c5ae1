use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use seasonlen_cli::manifest::read_manifest;
use seasonlen_core::rng::SeededRng;

fn seasonlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seasonlen"))
        .args(args)
        .output()
        .unwrap()
}

fn write_csv(path: &Path, header: Option<&str>, values: &[f64]) {
    let mut text = header.map(|h| format!("{h}\n")).unwrap_or_default();
    for v in values {
        text.push_str(&format!("{v}\n"));
    }
    fs::write(path, text).unwrap();
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn detects_daily_sinusoid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let x: Vec<f64> = (0..960)
        .map(|t| (2.0 * PI * t as f64 / 24.0).sin())
        .collect();
    write_csv(&path, Some("load"), &x);
    let cutoff = (0.4 * PI / 24.0).to_string();
    let out = seasonlen(&[
        "detect",
        "--input",
        path.to_str().unwrap(),
        "--cutoff",
        &cutoff,
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    let s = v["unscaled_length"].as_f64().unwrap();
    assert!((s - 24.0).abs() < 1.0, "{s}");
    for key in ["season_length", "trend_degree", "zeros", "interval_size"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn delta_scales_and_columns_select() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let mut text = String::from("t;y\n");
    for t in 0..960 {
        text.push_str(&format!("{t};{}\n", (2.0 * PI * t as f64 / 24.0).sin()));
    }
    fs::write(&path, text).unwrap();
    let cutoff = (0.4 * PI / 24.0).to_string();
    let out = seasonlen(&[
        "detect",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "y",
        "--delimiter",
        ";",
        "--delta",
        "0.5",
        "--cutoff",
        &cutoff,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let (s, u) = (
        v["season_length"].as_f64().unwrap(),
        v["unscaled_length"].as_f64().unwrap(),
    );
    assert!((s - 0.5 * u).abs() < 1e-12);
}

#[test]
fn three_rows_is_too_short() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    write_csv(&path, None, &[1.0, 2.0, 3.0]);
    let out = seasonlen(&["detect", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("TooShort"));
}

#[test]
fn missing_file_and_bad_values_exit_two() {
    let out = seasonlen(&["detect", "--input", "/nonexistent/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    fs::write(&path, "1\n2\nx\n4\n5\n").unwrap();
    let out = seasonlen(&["detect", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = seasonlen(&[
        "detect",
        "--input",
        path.to_str().unwrap(),
        "--quotient-threshold",
        "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn white_noise_reports_null() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let mut rng = SeededRng::new(5);
    let x: Vec<f64> = (0..1000).map(|_| rng.normal()).collect();
    write_csv(&path, None, &x);
    let out = seasonlen(&["detect", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["season_length"].is_null());
}

#[test]
fn gen_is_byte_identical_and_no_season_has_null_references() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b, &a] {
        let out = seasonlen(&[
            "gen",
            "NoSeason",
            "--seed",
            "7",
            "--out",
            d.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let entries = read_manifest(&a.join("manifest.jsonl")).unwrap();
    assert_eq!(entries.len(), 10);
    assert!(entries.iter().all(|e| e.reference.is_none()));
    let mut names: Vec<_> = fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 11);
    for name in names {
        assert_eq!(
            fs::read(a.join(&name)).unwrap(),
            fs::read(b.join(&name)).unwrap()
        );
    }
}

#[test]
fn unknown_family_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = seasonlen(&["gen", "Economy", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnknownFamily"));
}

#[test]
fn gen_then_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite");
    let out = seasonlen(&[
        "gen",
        "Noise",
        "--seed",
        "7",
        "--out",
        suite.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let manifest = suite.join("manifest.jsonl");
    let serial = dir.path().join("serial.jsonl");
    let parallel = dir.path().join("parallel.jsonl");
    let out = seasonlen(&[
        "eval",
        "--input",
        manifest.to_str().unwrap(),
        "--out",
        serial.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.lines().any(|l| l.starts_with("Noise")));
    assert!(table.lines().last().unwrap().starts_with("total"));
    let out = seasonlen(&[
        "eval",
        "--input",
        manifest.to_str().unwrap(),
        "--jobs",
        "4",
        "--out",
        parallel.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = fs::read_to_string(&serial).unwrap();
    assert_eq!(s.lines().count(), 10);
    assert_eq!(s, fs::read_to_string(&parallel).unwrap());
}

#[test]
fn empty_manifest_completes() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.jsonl");
    fs::write(&manifest, "").unwrap();
    let out = seasonlen(&["eval", "--input", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("total"));
}

#[test]
fn malformed_manifest_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.jsonl");
    fs::write(&manifest, "{not json}\n").unwrap();
    let out = seasonlen(&["eval", "--input", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn noiseless_tiles_pass_at_zero_margin() {
    // exact tiles: the oracle reproduces the reference, so a zero margin is
    // enough for the pass predicate
    let dir = tempfile::tempdir().unwrap();
    let mut manifest = String::new();
    for (i, block) in [
        vec![0., 2., 1., 2.],
        vec![3., 1., 4., 1., 5.],
        vec![1., -1., 0.],
    ]
    .iter()
    .enumerate()
    {
        let p = block.len();
        let x: Vec<f64> = (0..p * 20).map(|t| block[t % p]).collect();
        let oracle = seasonlen_core::exact_season_oracle(&x).unwrap() as f64;
        assert_eq!(oracle, p as f64);
        let r = seasonlen_core::Reference::Exact(p as f64);
        assert!(seasonlen_cli::score(Some(oracle), &r, 0.0).1);
        let file = format!("tile{i}.csv");
        write_csv(&dir.path().join(&file), None, &x);
        manifest.push_str(&format!(
            "{{\"path\":\"{file}\",\"reference\":{p},\"family\":\"Tiles\",\"case\":\"t{i}\"}}\n"
        ));
    }
    let path = dir.path().join("m.jsonl");
    fs::write(&path, manifest).unwrap();
    let out = seasonlen(&["eval", "--input", path.to_str().unwrap(), "--margin", "0"]);
    assert_eq!(out.status.code(), Some(0));
}
