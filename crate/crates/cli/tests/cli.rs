use std::process::{Command, Output};

use serde_json::Value;

fn boxlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxlab")).args(args).output().expect("run boxlab")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn close(v: &Value, want: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() < 1e-9
}

#[test]
fn measure_catalog_boxes() {
    let v = json(&boxlab(&["measure", "--catalog", "PR000", "--format", "json"]));
    assert!(close(&v["G"], 4.0));
    assert_eq!(v["local"], Value::Bool(false));
    let v = json(&boxlab(&["measure", "--catalog", "Noise", "--format", "json"]));
    for k in ["G", "Q", "T", "C"] {
        assert!(close(&v[k], 0.0), "{k}");
    }
    assert_eq!(v["local"], Value::Bool(true));
    let v = json(&boxlab(&["measure", "--catalog", "Tsirelson000", "--format", "json"]));
    assert!(close(&v["chsh"][0], 2.0 * 2f64.sqrt()));
    assert!(close(&v["G"], 2.0 * 2f64.sqrt()));
    let v = json(&boxlab(&["measure", "--catalog", "Sv0000", "--format", "json"]));
    assert!(close(&v["G"], 8.0));
    assert_eq!(v["two_way_local"], Value::Bool(false));
}

#[test]
fn decompose_examples() {
    let v = json(&boxlab(&["decompose", "two", "--catalog", "PR000:0.7,Noise:0.3"]));
    assert!(close(&v["mu"], 0.7));
    assert_eq!(v["nonlocal_id"], "PR000");
    let v = json(&boxlab(&["decompose", "three", "--catalog", "MerminMM000"]));
    assert!(close(&v["nu"], 1.0));
    let v = json(&boxlab(&[
        "decompose", "three", "--family", "schmidt", "--param", "theta=0.7853981633974483", "--settings", "meb1(0.75)",
    ]));
    assert!(close(&v["mu"], 0.5));
    assert!(close(&v["nu"], 0.75f64.sqrt() - 0.5));
    assert_eq!(boxlab(&["decompose", "two", "--catalog", "Sv0000"]).status.code(), Some(2));
}

#[test]
fn box_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("werner.json");
    let p = path.to_str().unwrap();
    let out = boxlab(&["state-box", "--family", "werner2", "--param", "p=0.8", "--settings", "BSb", "--out", p]);
    assert!(out.status.success());
    let v = json(&boxlab(&["measure", "--box", p, "--format", "json"]));
    assert!(close(&v["G"], 0.8 * 2.0 * 2f64.sqrt()));
    std::fs::write(&path, r#"{"parties":2,"table":[[[[1,0],[0,0]],[[1,0],[0,0]]],[[[1,0],[0,0]],[[0,0],[0,0.5]]]]}"#).unwrap();
    assert_eq!(boxlab(&["measure", "--box", p]).status.code(), Some(2));
    assert_eq!(boxlab(&["measure", "--box", "/nonexistent/box.json"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_is_ordered_and_rounded() {
    let out = boxlab(&[
        "sweep", "--family", "schmidt", "--vary", "theta", "--start", "0", "--stop", "0.7853981633974483", "--steps", "9",
        "--settings", "BSb", "--measures", "chsh,G",
    ]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["theta", "chsh", "G"]);
    let rows: Vec<Vec<f64>> =
        r.records().map(|rec| rec.unwrap().iter().map(|s| s.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 9);
    for w in rows.windows(2) {
        assert!(w[0][0] < w[1][0]);
    }
    for row in &rows {
        // BSb on the Schmidt family: CHSH = G = 2√2·sin2θ
        let want = 2.0 * 2f64.sqrt() * (2.0 * row[0]).sin();
        assert!((row[1] - want).abs() < 1e-10 && (row[2] - want).abs() < 1e-10);
    }
    let again = boxlab(&[
        "sweep", "--family", "schmidt", "--vary", "theta", "--start", "0", "--stop", "0.7853981633974483", "--steps", "9",
        "--settings", "BSb", "--measures", "chsh,G",
    ]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn sweep_with_tangle_settings() {
    let out = boxlab(&[
        "sweep", "--family", "schmidt", "--vary", "theta", "--start", "0.1", "--stop", "0.7", "--steps", "4",
        "--settings", "PRQ(tau)", "--measures", "G", "--format", "json",
    ]);
    let v = json(&out);
    for row in v.as_array().unwrap() {
        let tau = (2.0 * row["theta"].as_f64().unwrap()).sin().powi(2);
        assert!(close(&row["G"], 4.0 * tau / (1.0 + tau).sqrt()));
    }
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(boxlab(&["measure", "--catalog", "nope"]).status.code(), Some(2));
    assert_eq!(boxlab(&["measure", "--family", "schmidt", "--param", "theta"]).status.code(), Some(2));
    assert_eq!(boxlab(&["sweep", "--family", "schmidt", "--vary", "theta", "--start", "0", "--stop", "1", "--steps", "1", "--settings", "BSb"]).status.code(), Some(2));
    assert_eq!(boxlab(&["measure", "--catalog", "PR000", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn verify_single_criterion() {
    let out = boxlab(&["verify", "--only", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS [ 1]"));
    assert_eq!(boxlab(&["verify", "--only", "99"]).status.code(), Some(2));
    // exit status 1 mirrors the criterion result
    let out = boxlab(&["verify", "--only", "9", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let want = if v[0]["pass"] == Value::Bool(true) { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(want));
}
