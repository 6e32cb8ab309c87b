//! End-to-end tests of the binary: the exit-code contract, the JSON
//! schemas, and output determinism. Every invocation scrubs
//! SEMILAB_WORKERS so the ambient environment cannot skew results.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn semilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semilab"))
        .args(args)
        .env_remove("SEMILAB_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Parses single-object JSON output.
fn json(out: &Output) -> Value {
    serde_json::from_str(stdout_str(out).trim()).expect("valid JSON")
}

#[test]
fn analyze_m_text_summary() {
    let out = semilab(&["analyze", fixture("m.sgt").to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("table \"m\" of order 4"));
    assert!(text.contains("L*: {0, 3} {1} {2}"));
    assert!(text.contains("R*: {0} {1, 3} {2}"));
    assert!(text.contains("contains M via [0, 1, 2, 3]"));
    assert!(text.contains("idempotents 0 and 1 do not commute"));
}

#[test]
fn analyze_m_json_schema() {
    let out = semilab(&["analyze", fixture("m.sgt").to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["input"]["name"], "m");
    assert_eq!(v["input"]["order"], 4);
    assert_eq!(v["classification"]["flags"]["amiable"], true);
    assert_eq!(v["classification"]["flags"]["adequate"], false);
    assert_eq!(v["classification"]["flags"]["avoids_m"], false);
    assert_eq!(v["m_embedding"]["map"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(
        v["green"]["l_star"],
        serde_json::json!([[0, 3], [1], [2]])
    );
    assert_eq!(
        v["green"]["r_star"],
        serde_json::json!([[0], [1, 3], [2]])
    );
    assert_eq!(v["green"]["maps"]["ell"], serde_json::json!([0, 1, 2, 0]));
    assert_eq!(v["green"]["maps"]["r"], serde_json::json!([0, 1, 2, 1]));
}

#[test]
fn analyze_trivial_sets_every_flag() {
    let out = semilab(&["analyze", fixture("trivial.sgt").to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    let flags = v["classification"]["flags"].as_object().expect("flag map");
    assert_eq!(flags.len(), 16);
    for (name, value) in flags {
        assert_eq!(value, &Value::Bool(true), "flag {name}");
    }
    assert_eq!(v["m_embedding"], Value::Null);
}

#[test]
fn analyze_json_is_deterministic_apart_from_timings() {
    let strip = |out: &Output| {
        let mut v = json(out);
        v.as_object_mut().unwrap().remove("timings").expect("timings present");
        serde_json::to_string(&v).unwrap()
    };
    let first = semilab(&["analyze", fixture("m.sgt").to_str().unwrap(), "--json"]);
    let second = semilab(&["analyze", fixture("m.sgt").to_str().unwrap(), "--json"]);
    assert_eq!(strip(&first), strip(&second));
}

#[test]
fn analyze_rejects_bad_input() {
    let out = semilab(&["analyze", fixture("bad.sgt").to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("associativity fails at triple (1, 0, 1)"));

    let out = semilab(&["analyze", "no/such/file.sgt"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("cannot read"));
}

#[test]
fn enumerate_order_2_both_dedup_modes() {
    let out = semilab(&["enumerate", "--order", "2", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "4 tables + summary");
    let summary: Value = serde_json::from_str(lines[4]).unwrap();
    assert_eq!(summary["schema_version"], 1);
    assert_eq!(summary["dedup"], "iso_and_anti");
    assert_eq!(summary["total_tables"], 4);
    assert_eq!(summary["matched"], 4);
    assert_eq!(summary["examples_emitted"], 4);

    let out = semilab(&["enumerate", "--order", "2", "--dedup", "iso", "--json"]);
    let text = stdout_str(&out);
    let summary: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["total_tables"], 5);
}

#[test]
fn enumerate_finds_exactly_m_at_order_4() {
    let out = semilab(&[
        "enumerate",
        "--order",
        "4",
        "--dedup",
        "iso",
        "--filter",
        "amiable,!adequate",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "one match + summary");
    let record: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(record["report"]["flags"]["amiable"], true);
    assert_eq!(record["report"]["flags"]["adequate"], false);
    assert_eq!(record["table"]["order"], 4);
    let summary: Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(summary["matched"], 1);
    assert_eq!(summary["total_tables"], 188);
}

#[test]
fn enumerate_rejects_bad_arguments() {
    let out = semilab(&["enumerate", "--order", "9"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("outside the supported range"));

    let out = semilab(&["enumerate", "--order", "3", "--filter", "frobnitz"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("bad --filter"));
}

#[test]
fn enumerate_is_deterministic_across_worker_counts() {
    let strip_elapsed = |out: &Output| {
        let text = stdout_str(out);
        let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
        let mut summary: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        summary.as_object_mut().unwrap().remove("elapsed_ms").expect("elapsed present");
        *lines.last_mut().unwrap() = serde_json::to_string(&summary).unwrap();
        lines.join("\n")
    };
    let single = semilab(&["enumerate", "--order", "3", "--json", "--workers", "1"]);
    let multi = Command::new(env!("CARGO_BIN_EXE_semilab"))
        .args(["enumerate", "--order", "3", "--json", "--workers", "1"])
        .env("SEMILAB_WORKERS", "4")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&single), 0);
    assert_eq!(exit_code(&multi), 0);
    assert_eq!(strip_elapsed(&single), strip_elapsed(&multi));
}

#[test]
fn malformed_workers_env_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_semilab"))
        .args(["enumerate", "--order", "2"])
        .env("SEMILAB_WORKERS", "three")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("SEMILAB_WORKERS"));
}

#[test]
fn enumerate_exports_parseable_sgt_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = semilab(&[
        "enumerate",
        "--order",
        "2",
        "--export-sgt",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        vec![
            "order2-0000.sgt",
            "order2-0001.sgt",
            "order2-0002.sgt",
            "order2-0003.sgt"
        ]
    );
    for name in names {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        semilab::sgt::parse_table(&text).expect("exported table re-parses");
    }
}

#[test]
fn verify_passes_at_small_orders() {
    let out = semilab(&["verify", "--max-order", "1"]);
    assert_eq!(exit_code(&out), 0);

    let out = semilab(&["verify", "--max-order", "3", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["report"]["failure"], Value::Null);
    assert_eq!(v["report"]["stats"].as_array().unwrap().len(), 3);
    assert_eq!(v["report"]["stats"][2]["tables"], 24);
}

#[test]
fn verify_guards_its_order_range() {
    let out = semilab(&["verify", "--max-order", "8"]);
    assert_eq!(exit_code(&out), 2);

    let out = semilab(&["verify", "--max-order", "7"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("long-run"));
}

#[test]
fn f_mul_matches_the_hand_oracle() {
    let out = semilab(&["f", "mul", "(ab)^1", "(ba)^1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("(ab)^1 * (ba)^1 = (ab)^1a"));
    assert!(text.contains("[[2, 0], [2, 0]]"));

    let out = semilab(&["f", "mul", "a", "a", "--json"]);
    let v = json(&out);
    assert_eq!(v["product"], "a");
    assert_eq!(v["length"], 1);
    assert_eq!(
        v["matrix"],
        serde_json::json!([["1", "0"], ["1", "0"]])
    );
}

#[test]
fn f_mul_skips_matrices_for_huge_words() {
    // The word ends in b, so right-multiplying by a concatenates with no
    // boundary merge.
    let out = semilab(&["f", "mul", "(ab)^2000000", "a", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["product"], "(ab)^2000000a");
    assert_eq!(v["length"], 4000001u64);
    assert_eq!(v["matrix"], Value::Null);
}

#[test]
fn f_mul_rejects_malformed_words() {
    let out = semilab(&["f", "mul", "(ab", "a"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_str(&out).contains("cannot parse"));
}

#[test]
fn f_classes_lists_window_words() {
    let out = semilab(&["f", "classes", "--max-len", "3", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    let rows = v["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["word"], "a");
    assert_eq!(rows[0]["ell"], "a");
    assert_eq!(rows[0]["r"], "a");
    assert_eq!(rows[2]["word"], "(ab)^1");
    assert_eq!(rows[2]["ell"], "b");
    assert_eq!(rows[2]["r"], "a");

    let out = semilab(&["f", "classes", "--max-len", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn f_verify_runs_all_suites() {
    let out = semilab(&["f", "verify", "--window", "12", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["distinctness"], true);
    assert_eq!(v["star_window"], true);
    assert_eq!(v["power_distinctness"], true);
    assert_eq!(v["matrix_homomorphism"], true);

    let out = semilab(&["f", "verify", "--window", "3"]);
    assert_eq!(exit_code(&out), 2);
}
