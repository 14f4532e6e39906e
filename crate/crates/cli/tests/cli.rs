use std::io::Write;
use std::process::{Command, Output, Stdio};

use lseq_core::fcsr::lseq_exponential;
use lseq_core::seqops::decimate;
use lseq_core::Modulus64;
use serde_json::Value;

fn lseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lseq")).args(args).output().expect("binary runs")
}

fn lseq_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lseq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&lseq(args))).unwrap()
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn gen_examples() {
    assert_eq!(stdout(&lseq(&["gen", "--q", "9", "--a", "1", "--len", "6"])), "111000\n");
    assert_eq!(stdout(&lseq(&["gen", "--q", "5", "--a", "1", "--len", "4"])), "1100\n");
    assert_eq!(stdout(&lseq(&["gen", "--p", "3", "--e", "2"])), "111000\n");
    assert_eq!(stdout(&lseq(&["gen", "--q", "5", "--format", "csv"])), "0,1\n1,1\n2,0\n3,0\n");
}

#[test]
fn gen_rejects_bad_moduli() {
    let out = lseq(&["gen", "--q", "7", "--a", "1", "--len", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2 is not a primitive root modulo 7"));
    for args in [
        &["gen", "--q", "15"][..],
        &["gen", "--q", "8"],
        &["gen", "--q", "9", "--a", "3"],
        &["gen", "--q", "27", "--p", "3", "--e", "2"],
        &["gen", "--p", "3"],
        &["gen"],
        &["frobnicate"],
    ] {
        assert_eq!(lseq(args).status.code(), Some(2), "{args:?}");
    }
    assert!(lseq(&["gen", "--q", "27", "--p", "3", "--e", "3"]).status.success());
}

#[test]
fn fcsr_matches_gen() {
    for q in ["5", "11", "27", "125"] {
        let gen = stdout(&lseq(&["gen", "--q", q, "--a", "2", "--len", "300"]));
        let reg = stdout(&lseq(&["fcsr", "--q", q, "--a", "2", "--len", "300"]));
        assert_eq!(gen, reg, "q = {q}");
    }
}

#[test]
fn gen_piped_through_decimate_matches_library() {
    let m = Modulus64::from_q(29).unwrap();
    let a = lseq_exponential(&m, 1, m.period()).unwrap();
    let generated = lseq(&["gen", "--q", "29"]);
    for d in [1usize, 3, 5, 9, 27] {
        let out = lseq_with_stdin(&["decimate", "--d", &d.to_string()], &generated.stdout);
        assert_eq!(stdout(&out).trim(), decimate(&a, d).unwrap().to_ascii(), "d = {d}");
    }
    let even = lseq_with_stdin(&["decimate", "--d", "2"], &generated.stdout);
    assert_eq!(even.status.code(), Some(2));
}

#[test]
fn shift_and_decimate_on_literal_bits() {
    assert_eq!(stdout(&lseq(&["shift", "--bits", "111000", "--tau", "2"])), "100011\n");
    assert_eq!(stdout(&lseq(&["shift", "--bits", "111000", "--tau", "-1"])), "011100\n");
    assert_eq!(stdout(&lseq(&["decimate", "--bits", "1100", "--d", "3"])), "1001\n");
    assert_eq!(lseq(&["shift", "--bits", "10a", "--tau", "1"]).status.code(), Some(2));
}

#[test]
fn acorr_values() {
    assert_eq!(stdout(&lseq(&["acorr", "--q", "5", "--c", "1", "--d", "1", "--tau", "0"])), "4\n");
    assert_eq!(stdout(&lseq(&["acorr", "--q", "5", "--c", "1", "--d", "3", "--tau", "3"])), "4\n");
    assert_eq!(stdout(&lseq(&["acorr", "--q", "5", "--c", "1", "--d", "3", "--tau", "1"])), "0\n");

    let all = stdout(&lseq(&["acorr", "--q", "19", "--c", "1", "--d", "5", "--all"]));
    let lines: Vec<&str> = all.lines().collect();
    assert_eq!(lines.len(), 18);
    for (tau, line) in lines.iter().enumerate() {
        assert_eq!(*line, format!("{tau},0"));
    }

    assert_eq!(lseq(&["acorr", "--q", "11", "--c", "1", "--d", "2", "--tau", "0"]).status.code(), Some(2));
    assert_eq!(lseq(&["acorr", "--q", "11", "--c", "1", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let v = json(&["verify", "conjecture", "--q", "27"]);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["schema_version"], 1);

    let v = json(&["verify", "conjecture", "--q", "9"]);
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["counterexamples"][0], serde_json::json!({"form": "decimation", "c": 1, "d": 5, "tau": 2}));

    assert_eq!(json(&["verify", "theorem1", "--q", "25"])["status"], "verified");
    assert_eq!(json(&["verify", "theorem1", "--q", "13"])["status"], "refuted");
    assert_eq!(json(&["verify", "ideal", "--q", "19"])["status"], "verified");
    assert_eq!(json(&["verify", "lemma5", "--p", "5", "--e", "2"])["violating_pairs"], serde_json::json!([]));

    let lemma5 = json(&["verify", "lemma5", "--q", "27"]);
    assert_eq!(lemma5["level"], 2);
    assert_eq!(lemma5["combined_violations"], serde_json::json!([]));

    assert_eq!(lseq(&["verify", "lemma5", "--p", "3", "--e", "2"]).status.code(), Some(2));
    assert_eq!(lseq(&["verify", "conjecture", "--q", "7"]).status.code(), Some(2));
}

#[test]
fn counterexamples_command() {
    let v = json(&["counterexamples", "--q", "5"]);
    assert_eq!(v["counterexamples"], serde_json::json!([{"c": 1, "d": 3, "tau": 1}]));
    assert_eq!(stdout(&lseq(&["counterexamples", "--q", "9", "--format", "csv"])), "c,d,tau\n1,5,2\n");
    assert_eq!(json(&["counterexamples", "--q", "27"])["counterexamples"], serde_json::json!([]));
}

#[test]
fn sweep_examples() {
    let refuted = |args: &[&str]| json(args)["refuted"].clone();
    assert_eq!(refuted(&["sweep", "--max-q", "100", "--e", "1"]), serde_json::json!([5, 11, 13]));
    assert_eq!(refuted(&["sweep", "--max-q", "30"]), serde_json::json!([5, 9, 11, 13]));

    let tiny = json(&["sweep", "--max-q", "4"]);
    assert_eq!(tiny["reports"].as_array().unwrap().len(), 1);
    assert_eq!(tiny["reports"][0]["q"], 3);
    assert_eq!(tiny["reports"][0]["status"], "verified");

    let csv = stdout(&lseq(&["sweep", "--max-q", "13", "--format", "csv", "--no-timing"]));
    let rows: Vec<&str> = csv.lines().collect();
    assert!(rows[0].starts_with("q,p,e,period"));
    assert_eq!(rows.len(), 1 + 5);
    assert!(rows[2].starts_with("5,5,1,4,") && rows[2].ends_with(",refuted,0"));

    assert_eq!(lseq(&["sweep", "--max-q", "100000000"]).status.code(), Some(2));
    assert_eq!(lseq(&["sweep", "--max-q", "30", "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn reports_validate_against_schema() {
    let validator = validator();
    for args in [
        &["verify", "theorem1", "--q", "25"][..],
        &["verify", "theorem1", "--q", "11"],
        &["verify", "conjecture", "--q", "9"],
        &["verify", "lemma5", "--p", "3", "--e", "3"],
        &["verify", "ideal", "--q", "13"],
        &["sweep", "--max-q", "30"],
        &["sweep", "--max-q", "200", "--e", "1"],
        &["counterexamples", "--q", "5"],
    ] {
        let doc = json(args);
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let mut doc = json(&["verify", "conjecture", "--q", "9"]);
    doc["unexpected"] = Value::Bool(true);
    assert!(!validator.is_valid(&doc));
    doc = json(&["verify", "conjecture", "--q", "9"]);
    doc["schema_version"] = Value::from(2);
    assert!(!validator.is_valid(&doc));
}

#[test]
fn identical_inputs_give_identical_documents() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    for (path, jobs) in [(&first, "1"), (&second, "4")] {
        let out = lseq(&["sweep", "--max-q", "250", "--jobs", jobs, "--no-timing", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&first).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&second).unwrap());

    let once = stdout(&lseq(&["verify", "lemma5", "--p", "7", "--e", "2", "--no-timing"]));
    let twice = stdout(&lseq(&["verify", "lemma5", "--p", "7", "--e", "2", "--no-timing"]));
    assert_eq!(once, twice);
}
