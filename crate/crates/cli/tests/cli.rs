use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nestmaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nestmaps")).args(args).env_remove("NESTMAPS_OUT_DIR").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = nestmaps(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&out)));
    (code(&out), v)
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name}: {}", msgs.join("; "));
}

#[test]
fn count_example() {
    let out = nestmaps(&["grassmann", "count", "-q", "2", "-n", "4", "-i", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "15\n");
    let out = nestmaps(&["grassmann", "count", "-p", "3", "-k", "2", "-n", "4", "-i", "2"]);
    // [4 choose 2]_9 = (9^4-1)(9^3-1)/((9^2-1)(9-1)) = 7462
    assert_eq!(stdout(&out), "7462\n");
}

#[test]
fn classify_example() {
    let (c, v) = json_of(&["schw", "classify", "-n", "6"]);
    assert_eq!(c, 0);
    let mut js: Vec<u64> = v["survivingJs"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    js.sort();
    assert_eq!(js, vec![2, 5]);
    let (_, odd) = json_of(&["schw", "classify", "-n", "7"]);
    assert!(odd["survivingJs"].as_array().unwrap().is_empty());
}

#[test]
fn match_example() {
    let out = nestmaps(&["nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("perfect: true"));
    let (c, v) = json_of(&["nest", "match", "-q", "3", "-n", "4", "-i", "1", "-j", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["matchingSize"], 40);
    assert_eq!(v["verified"], true);
}

#[test]
fn exit_codes() {
    // a check that runs and fails
    assert_eq!(code(&nestmaps(&["schw", "check", "--poly", "1,1,1", "-m", "4"])), 1);
    // no bijection between Gr(1, 4) and Gr(2, 4)
    assert_eq!(code(&nestmaps(&["nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "2"])), 1);
    // usage and input errors
    assert_eq!(code(&nestmaps(&["grassmann", "count", "-n", "4", "-i", "1"])), 2);
    assert_eq!(code(&nestmaps(&["grassmann", "count", "-q", "6", "-n", "4", "-i", "1"])), 2);
    assert_eq!(code(&nestmaps(&["grassmann", "frobnicate"])), 2);
    assert_eq!(code(&nestmaps(&["nest", "hall", "-q", "2", "-n", "4", "-i", "1", "-j", "2"])), 2);
    assert_eq!(code(&nestmaps(&["schw", "check", "--poly", "2,1", "-m", "4"])), 2);
    assert_eq!(code(&nestmaps(&["schw", "trace", "--poly", "1,2,1", "-m", "4"])), 2);
    assert_eq!(code(&nestmaps(&["nest", "perp", "-q", "2", "-n", "3"])), 2);
    assert_eq!(code(&nestmaps(&["grassmann", "enum", "-q", "2", "-n", "3", "-i", "1", "--format", "csv"])), 2);
    let out = nestmaps(&["grassmann", "count", "-n", "4", "-i", "1"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn json_reports_match_schemas() {
    let cases: &[(&str, &[&str])] = &[
        ("grassmann-count", &["grassmann", "count", "-q", "4", "-n", "3", "-i", "1"]),
        ("grassmann-enum", &["grassmann", "enum", "-q", "4", "-n", "2", "-i", "1"]),
        ("nest-match", &["nest", "match", "-q", "2", "-n", "5", "-i", "2", "-j", "3"]),
        ("nest-hall", &["nest", "hall", "-q", "2", "-n", "4", "-i", "1", "-j", "3", "--samples", "50"]),
        ("nest-perp", &["nest", "perp", "-q", "3", "-n", "4"]),
        ("nest-linear-check", &["nest", "linear-check", "-q", "3", "-n", "2", "--gram", "0,1;-1,0"]),
        ("nest-linear-check", &["nest", "linear-check", "-q", "2", "-n", "2"]),
        ("chern-verify", &["chern", "verify", "--d-max", "6", "--n-max", "6"]),
        ("chern-certificate", &["chern", "certificate", "--d-max", "10"]),
        ("chern-obstruction", &["chern", "obstruction", "-n", "6", "-i", "1", "-j", "2"]),
        ("chern-obstruction", &["chern", "obstruction", "-n", "5", "-i", "2", "-j", "3"]),
        ("chern-obstruction", &["chern", "obstruction", "-n", "4", "-i", "2", "-j", "3"]),
        ("schw-check", &["schw", "check", "--poly", "1,0,-1", "-m", "5", "-s", "-3..3"]),
        ("schw-classify", &["schw", "classify", "-n", "8"]),
        ("schw-trace", &["schw", "trace", "--poly", "1,1,1", "-m", "6"]),
    ];
    for (name, args) in cases {
        let (_, v) = json_of(args);
        assert_valid(name, &v);
    }
    let mut timed = cases[0].1.to_vec();
    timed.push("--timing");
    let (_, v) = json_of(&timed);
    assert!(v["elapsedMs"].is_u64());
    assert_valid("grassmann-count", &v);
}

#[test]
fn schemas_reject_wrong_shapes() {
    let (_, mut v) = json_of(&["schw", "check", "--poly", "1,1", "-m", "3"]);
    v["values"][0]["value"] = Value::from(0.5);
    assert!(!schema("schw-check").is_valid(&v));
    let (_, mut v) = json_of(&["grassmann", "count", "-q", "2", "-n", "4", "-i", "1"]);
    v["unexpected"] = Value::from(1);
    assert!(!schema("grassmann-count").is_valid(&v));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let runs: &[&[&str]] = &[
        &["nest", "hall", "-q", "2", "-n", "5", "-i", "2", "-j", "3", "--seed", "7", "--format", "json"],
        &["nest", "match", "-q", "2", "-n", "6", "-i", "1", "-j", "5", "--format", "csv"],
        &["schw", "classify", "-n", "12"],
        &["chern", "certificate", "--d-max", "20", "--format", "json"],
    ];
    for args in runs {
        let a = nestmaps(args);
        let b = nestmaps(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = nestmaps(&["nest", "hall", "-q", "2", "-n", "4", "-i", "1", "-j", "3", "--seed", "1", "--format", "json"]);
    let b = nestmaps(&["nest", "hall", "-q", "2", "-n", "4", "-i", "1", "-j", "3", "--seed", "2", "--format", "json"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn output_files_and_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("m.json");
    let pairs = dir.path().join("pairs.tsv");
    let out = nestmaps(&[
        "nest",
        "match",
        "-q",
        "2",
        "-n",
        "4",
        "-i",
        "1",
        "-j",
        "3",
        "--format",
        "json",
        "-o",
        report.to_str().unwrap(),
        "--export",
        pairs.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["matchingSize"], 15);
    let tsv = std::fs::read_to_string(&pairs).unwrap();
    assert_eq!(tsv.lines().count(), 15);
    assert!(tsv.lines().all(|l| l.split('\t').count() == 2));

    let status = Command::new(env!("CARGO_BIN_EXE_nestmaps"))
        .args(["schw", "classify", "-n", "6", "--format", "csv", "-o", "sub/classify.csv"])
        .env("NESTMAPS_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(dir.path().join("sub/classify.csv")).unwrap();
    assert!(csv.starts_with("n,j,entries,survivors\n"));
    assert!(csv.contains("6,2,1,1\n") && csv.contains("6,5,1,1\n"));
}

#[test]
fn text_reports() {
    let out = stdout(&nestmaps(&["chern", "certificate"]));
    assert!(out.contains("d = 2..=50: pass"));
    assert!(out.contains("Gram determinant of θ_2(x, y, z): 1/2"));
    let out = stdout(&nestmaps(&["schw", "check", "--poly", "1,1,1", "-m", "3"]));
    assert!(out.contains("B_(1,3) = -1/2"));
    let out = stdout(&nestmaps(&["nest", "linear-check", "-q", "2", "-n", "4"]));
    assert!(out.contains("invertible: 20160"));
    assert!(out.contains("disagreements: 0"));
}
