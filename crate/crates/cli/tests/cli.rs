use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn tnncell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnncell")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(value).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn enumerate_counts() {
    for (args, count) in [
        (vec!["--n", "2"], 13),
        (vec!["--n", "2", "--J", ""], 9),
        (vec!["--n", "2", "--J", "-"], 9),
        (vec!["--n", "2", "--J", "1"], 4),
        (vec!["--n", "3", "--J", "1,2"], 36),
    ] {
        let out = tnncell(&[&["enumerate"][..], &args].concat());
        assert!(out.status.success(), "{args:?}");
        let v = stdout_json(&out);
        assert_eq!(v["v"], 1);
        assert_eq!(v["cells"].as_array().unwrap().len(), count, "{args:?}");
    }
}

#[test]
fn enumerate_matches_golden_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.json");
    let out = tnncell(&["enumerate", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read(&path).unwrap(), fs::read(golden("cells_n2.json")).unwrap());
}

#[test]
fn sample_is_byte_reproducible() {
    let first = tnncell(&["sample", "--n", "3", "--J", "1", "--seed", "7"]);
    let second = tnncell(&["sample", "--n", "3", "--J", "1", "--seed", "7"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, fs::read(golden("sample_n3_J1_seed7.json")).unwrap());
    let other = tnncell(&["sample", "--n", "3", "--J", "1", "--seed", "8"]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn sample_then_classify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cells = stdout_json(&tnncell(&["enumerate", "--n", "3", "--J", "2"]));
    for (k, record) in cells["cells"].as_array().unwrap().iter().enumerate().step_by(7) {
        let label_file = write(dir.path(), &format!("label{k}.json"), &json!({ "v": 1, "n": 3, "label": record }));
        let point = dir.path().join(format!("point{k}.json"));
        let out = tnncell(&["sample", &label_file, "--seed", "3", "--out", point.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let back = stdout_json(&tnncell(&["classify", point.to_str().unwrap()]));
        assert_eq!(back["label"], *record);
    }
}

#[test]
fn limit_and_membership() {
    let dir = tempfile::tempdir().unwrap();
    let g = json!([["1", "1"], ["1", "2"]]);
    let curve = write(dir.path(), "curve.json", &json!({ "v": 1, "g1": g, "c": [1], "g2": g }));
    let point = dir.path().join("limit.json");
    assert!(tnncell(&["limit", &curve, "--out", point.to_str().unwrap()]).status.success());
    let z: Value = serde_json::from_str(&fs::read_to_string(&point).unwrap()).unwrap();
    assert_eq!(z["J"], json!([]));
    let out = tnncell(&["membership", point.to_str().unwrap(), "--entrywise"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({ "positive": true, "route": "entrywise" }));

    let id = json!([["1", "0"], ["0", "1"]]);
    let curve = write(dir.path(), "bare.json", &json!({ "v": 1, "g1": id, "c": [2], "g2": id }));
    let point = dir.path().join("base.json");
    assert!(tnncell(&["limit", &curve, "--out", point.to_str().unwrap()]).status.success());
    let out = tnncell(&["membership", point.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tp_check() {
    let dir = tempfile::tempdir().unwrap();
    let tp = write(dir.path(), "tp.json", &json!({ "v": 1, "matrix": [["1", "1"], ["1", "2"]] }));
    let out = tnncell(&["tp-check", &tp]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["totally_positive"], true);
    let tnn = write(dir.path(), "tnn.json", &json!({ "v": 1, "matrix": [["1", "0"], ["0", "1"]] }));
    let out = tnncell(&["tp-check", &tnn]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out), json!({ "totally_positive": false, "totally_nonnegative": true }));
}

#[test]
fn verify_reports() {
    let out = tnncell(&["verify", "census", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["suite"], "census");
    assert_eq!(reports[0]["notes"]["cells"], 13);
    assert_eq!(reports[0]["failures"], json!([]));
    let out = tnncell(&["verify", "all", "--n", "2", "--samples", "10", "--seeds", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out).as_array().unwrap().len(), 12);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // usage
    assert_eq!(tnncell(&["enumerate"]).status.code(), Some(2));
    assert_eq!(tnncell(&["enumerate", "--n", "9"]).status.code(), Some(2));
    assert_eq!(tnncell(&["enumerate", "--n", "3", "--J", "5"]).status.code(), Some(2));
    assert_eq!(tnncell(&["verify", "nonsense", "--n", "2"]).status.code(), Some(2));
    let junk = write(dir.path(), "junk.json", &json!({ "v": 1, "n": 2 }));
    assert_eq!(tnncell(&["classify", &junk]).status.code(), Some(2));
    let wrong_version = write(dir.path(), "v2.json", &json!({ "v": 2, "matrix": [["1"]] }));
    assert_eq!(tnncell(&["tp-check", &wrong_version]).status.code(), Some(2));
    // empty cell: v = s_1 is not a minimal coset representative for J = {1}
    let e = json!([1, 2, 3]);
    let label = json!({ "J": [1], "v": [2, 1, 3], "w": [2, 3, 1], "v2": e, "w2": e, "y": e, "y2": e });
    let file = write(dir.path(), "empty.json", &json!({ "v": 1, "n": 3, "label": label }));
    let out = tnncell(&["sample", &file]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    // unsupported stratum for the entrywise route
    let point = dir.path().join("full.json");
    assert!(tnncell(&["sample", "--n", "3", "--J", "1,2", "--out", point.to_str().unwrap()]).status.success());
    assert_eq!(tnncell(&["membership", point.to_str().unwrap(), "--entrywise"]).status.code(), Some(3));
    assert_eq!(tnncell(&["membership", point.to_str().unwrap()]).status.code(), Some(0));
}
