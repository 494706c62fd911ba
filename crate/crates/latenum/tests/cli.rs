//! End-to-end tests of the `latenum` binary: exit codes, JSON payload
//! shapes, and reproducibility.

use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_latenum"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(payload: &str) -> Value {
    serde_json::from_str(payload).expect("stdout is valid JSON")
}

#[test]
fn enumerate_generated_k4() {
    let (code, stdout, _) = run(&["enumerate", "--k", "4", "--method", "generated"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["k"], 4);
    assert_eq!(doc["method"], "generated");
    assert_eq!(doc["count"], 50);
    assert_eq!(doc["complete"], true);
    let classes = doc["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 50);
    for class in classes {
        assert!(class["key"].as_str().unwrap().chars().all(|c| c.is_ascii_hexdigit()));
        assert!(class["pairs"].is_array());
    }
    // keys strictly increasing
    let keys: Vec<&str> = classes.iter().map(|c| c["key"].as_str().unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn enumerate_partitions_k3() {
    let (code, stdout, _) = run(&["enumerate", "--k", "3", "--method", "partitions"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["method"], "partitions");
}

#[test]
fn enumerate_realizable_k3_carries_witnesses() {
    let (code, stdout, _) = run(&["enumerate", "--k", "3", "--method", "realizable"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["count"], 4);
    for class in doc["classes"].as_array().unwrap() {
        assert!(class["witness"].is_array(), "witness missing: {}", class);
    }
}

#[test]
fn enumerate_realizable_k4_is_complete() {
    let (code, stdout, _) = run(&["enumerate", "--k", "4", "--method", "realizable"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["count"], 50);
    assert!(doc["classes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["witness"].is_array()));
}

#[test]
fn enumerate_rejects_unsupported_combinations() {
    let (code, _, stderr) = run(&["enumerate", "--k", "5", "--method", "partitions"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));

    let (code, _, _) = run(&["enumerate", "--k", "6", "--method", "generated"]);
    assert_eq!(code, 2);

    // k=5 realizable needs --samples
    let (code, _, _) = run(&["enumerate", "--k", "5", "--method", "realizable"]);
    assert_eq!(code, 2);
    let (code, stdout, _) = run(&[
        "enumerate",
        "--k",
        "5",
        "--method",
        "realizable",
        "--samples",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["complete"], false);
}

#[test]
fn enumerate_table_format() {
    let (code, stdout, _) = run(&["enumerate", "--k", "3", "--format", "table"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.trim_end().lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.contains(&"\u{2205}"));
    assert!(lines.iter().any(|l| l.contains('-') && !l.contains('~')));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let first = run(&["enumerate", "--k", "4"]);
    let second = run(&["enumerate", "--k", "4"]);
    assert_eq!(first.1, second.1);
    let v1 = run(&["verify"]);
    let v2 = run(&["verify"]);
    assert_eq!(v1.1, v2.1);
}

#[test]
fn verify_builtin_corpus() {
    let (code, stdout, _) = run(&["verify"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["passed"], 54);
    assert_eq!(doc["failed"], 0);
    assert_eq!(doc["k4_matches_enumeration"], true);
}

#[test]
fn verify_flags_corrupted_corpus() {
    // delete one letter from a witness family and expect exit 1
    let rows: Value = json(&std::fs::read_to_string(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus.json"),
    )
    .unwrap());
    let mut rows = rows.as_array().unwrap().clone();
    for row in &mut rows {
        if row["table"] == 2 && row["row"] == 3 {
            // (ad, be, c, de) → (ad, be, c, d)
            row["sets"][3] = serde_json::json!(["d"]);
        }
    }
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{}", Value::Array(rows)).unwrap();

    let path = file.path().to_str().unwrap();
    let (code, stdout, _) = run(&["verify", "--corpus", path]);
    assert_eq!(code, 1);
    let doc = json(&stdout);
    assert_eq!(doc["failed"], 1);
    let bad = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["pass"] == false)
        .unwrap();
    assert_eq!((bad["table"].as_u64(), bad["row"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn verify_missing_corpus_is_usage_error() {
    let (code, _, stderr) = run(&["verify", "--corpus", "/nonexistent/corpus.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn betti_triangle_with_total() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"sets": [["a","b"],["b","c"],["c","a"]]}}"#).unwrap();
    let path = file.path().to_str().unwrap();

    let (code, stdout, _) = run(&["betti", "--family", path, "--field", "q", "--with-total"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["field"], "Q");
    assert_eq!(doc["per_j"], serde_json::json!([1, 3, 2, 0]));
    assert_eq!(
        doc["total_by_degree"],
        serde_json::json!({"0": 1, "3": 3, "4": 2})
    );
}

#[test]
fn betti_singletons() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"sets": [["a"],["b"],["c"]]}}"#).unwrap();
    let path = file.path().to_str().unwrap();

    let (code, stdout, _) = run(&["betti", "--family", path]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["per_j"], serde_json::json!([1, 3, 3, 1]));
    assert!(doc.get("total_by_degree").is_none());

    let (code, stdout, _) = run(&["betti", "--family", path, "--field", "f2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["field"], "F2");
}

#[test]
fn betti_improper_family_is_input_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"sets": [["a"],["a","b"]]}}"#).unwrap();
    let path = file.path().to_str().unwrap();

    let (code, _, stderr) = run(&["betti", "--family", path]);
    assert_eq!(code, 2);
    assert!(stderr.contains("X_1"), "stderr names the pair: {}", stderr);
    assert!(stderr.contains("X_2"));
}

#[test]
fn canon_interchangeable_relations_share_a_key() {
    let (code, out1, _) = run(&["canon", "--k", "4", "123~1234,23~234"]);
    assert_eq!(code, 0);
    let (_, out2, _) = run(&["canon", "--k", "4", "124~1234,14~134"]);
    let (d1, d2) = (json(&out1), json(&out2));
    assert_eq!(d1["key"], d2["key"]);
    assert_eq!(d1["valid"], true);

    // relation lists pasted straight from a table, dash separators included
    let (_, out3, _) = run(&["canon", "--k", "4", "123-1234, 23-234"]);
    assert_eq!(json(&out3)["key"], d1["key"]);
}

#[test]
fn canon_empty_relation_list() {
    let (code, stdout, _) = run(&["canon", "--k", "4", ""]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 0);
    assert_eq!(doc["valid"], true);
    // discrete key = identity serialization of the canonical domain order
    assert_eq!(doc["key"], "030506090a0c070b0d0e0f");
}

#[test]
fn canon_parse_failure_is_usage_error() {
    let (code, _, _) = run(&["canon", "--k", "4", "12~99"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["canon", "--k", "4", "garbage"]);
    assert_eq!(code, 2);
}

#[test]
fn k5_budgeted_checkpointed_run() {
    let dir = tempfile::tempdir().unwrap();
    let checkpoint = dir.path().join("partial.json");
    let (code, stdout, stderr) = run(&[
        "enumerate",
        "--k",
        "5",
        "--budget-secs",
        "3",
        "--checkpoint",
        checkpoint.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["k"], 5);
    assert!(doc["complete"].is_boolean());
    assert!(doc["count"].as_u64().unwrap() > 0);
    if doc["complete"] == false {
        assert!(stderr.contains("budget exhausted"), "stderr: {}", stderr);
    }
    assert!(stderr.contains("progress:"), "stderr: {}", stderr);
    // the checkpoint file holds a valid partial document
    let snapshot: Value =
        serde_json::from_str(&std::fs::read_to_string(&checkpoint).unwrap()).unwrap();
    assert_eq!(snapshot["k"], 5);
    assert!(snapshot["count"].as_u64().unwrap() > 0);
}
