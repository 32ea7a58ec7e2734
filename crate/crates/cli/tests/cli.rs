use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gold(listing: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/gold").join(listing)
}

fn idsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idsim"))
        .args(args)
        .env_remove("IDSIM_CONFIG")
        .env_remove("RUST_LOG")
        .output()
        .expect("spawn idsim")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn scan_writes_inventory() {
    let dir = tempfile::tempdir().unwrap();
    let inv = dir.path().join("inv.jsonl");
    let out = idsim(&["scan", p(&gold("listing06")), "--out", p(&inv)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(&inv).unwrap();
    assert!(text.contains(r#""name":"agentName""#));
    assert!(text.contains(r#""name":"agentNames""#));
    assert!(stderr(&out).contains("identifiers"));
}

#[test]
fn missing_root_is_a_usage_error() {
    let out = idsim(&["scan", "/definitely/not/here"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Usage"), "{}", stderr(&out));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = idsim(&["scan", p(&gold("listing06")), "--out", "/definitely/not/here/inv.jsonl"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn classify_emits_group_labels() {
    let dir = tempfile::tempdir().unwrap();
    let inv = dir.path().join("inv.jsonl");
    assert_eq!(code(&idsim(&["scan", p(&gold("listing11")), "--out", p(&inv)])), 0);
    let out = idsim(&["classify", p(&inv)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let label: serde_json::Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(label["category"], "numeric_value_encoded");
    assert_eq!(label["group"].as_array().unwrap().len(), 2);
    assert_eq!(label["needs_review"], false);
}

#[test]
fn empty_inventory_gives_no_labels() {
    let dir = tempfile::tempdir().unwrap();
    let inv = dir.path().join("inv.jsonl");
    std::fs::write(&inv, "").unwrap();
    let out = idsim(&["classify", p(&inv)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn corrupt_inventory_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let inv = dir.path().join("inv.jsonl");
    assert_eq!(code(&idsim(&["scan", p(&gold("listing06")), "--out", p(&inv)])), 0);
    let mut text = std::fs::read_to_string(&inv).unwrap();
    text.push_str("{not json\n");
    let bad_line = text.lines().count();
    std::fs::write(&inv, text).unwrap();
    let out = idsim(&["classify", p(&inv)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains(&format!("line {bad_line}")), "{}", stderr(&out));
}

#[test]
fn dangling_label_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let inv = dir.path().join("inv.jsonl");
    let labels = dir.path().join("labels.jsonl");
    assert_eq!(code(&idsim(&["scan", p(&gold("listing06")), "--out", p(&inv)])), 0);
    assert_eq!(code(&idsim(&["classify", p(&inv), "--out", p(&labels)])), 0);
    let other = dir.path().join("other.jsonl");
    assert_eq!(code(&idsim(&["scan", p(&gold("listing12")), "--out", p(&other)])), 0);
    let out = idsim(&["report", p(&labels), p(&other)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown"), "{}", stderr(&out));
}

#[test]
fn analyze_renders_markdown() {
    let gold_root = gold("");
    let out = idsim(&["analyze", p(&gold_root), "--project", "gold", "--format", "markdown"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("| Project | Similarities Count | Top | 2nd | 3rd |"), "{text}");
    assert!(text.contains("| gold |"));
}

#[test]
fn analyze_keeps_intermediates() {
    let dir = tempfile::tempdir().unwrap();
    let keep = dir.path().join("work");
    let report = dir.path().join("report.csv");
    let out = idsim(&[
        "analyze",
        p(&gold("listing13")),
        "--format",
        "csv",
        "--keep-intermediate",
        p(&keep),
        "--out",
        p(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(keep.join("inventory.jsonl").is_file());
    let labels = std::fs::read_to_string(keep.join("labels.jsonl")).unwrap();
    assert!(labels.contains("concise_acronym"));
    assert!(report.is_file());
    assert!(dir.path().join("report.labels.csv").is_file());
}

#[test]
fn empty_tree_warns_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = idsim(&["analyze", p(dir.path())]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("no source files"), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["summary"]["total_identifiers"], 0);
}

#[test]
fn include_tests_widens_the_scan() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("src/test/java")).unwrap();
    std::fs::create_dir_all(dir.path().join("src/main/java")).unwrap();
    std::fs::write(dir.path().join("src/main/java/A.java"), "class A { int a; }").unwrap();
    std::fs::write(dir.path().join("src/test/java/ATest.java"), "class ATest { int t; }").unwrap();
    let count = |extra: &[&str]| {
        let mut args = vec!["scan", p(dir.path())];
        args.extend_from_slice(extra);
        let out = idsim(&args);
        assert_eq!(code(&out), 0);
        String::from_utf8(out.stdout).unwrap().lines().count()
    };
    let default = count(&[]);
    let all = count(&["--include-tests"]);
    assert_eq!(default, 2);
    assert_eq!(all, 4);
    assert_eq!(count(&["--include-tests", "--exclude", "src/test/**"]), 2);
}

#[test]
fn runs_are_byte_identical() {
    let root = gold("");
    let a = idsim(&["analyze", p(&root), "--project", "gold", "--threads", "1"]);
    let b = idsim(&["analyze", p(&root), "--project", "gold", "--threads", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sampling_is_seeded() {
    let root = gold("");
    let run = |seed: &str| idsim(&["analyze", p(&root), "--project", "gold", "--sample", "--seed", seed]).stdout;
    let a = run("7");
    assert_eq!(a, run("7"));
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let analyzed = report["summary"]["analyzed_identifiers"].as_u64().unwrap();
    let total = report["summary"]["total_identifiers"].as_u64().unwrap();
    assert!(analyzed <= total && analyzed > 0);
}

#[test]
fn help_version_and_bad_flags() {
    assert_eq!(code(&idsim(&["--help"])), 0);
    assert_eq!(code(&idsim(&["--version"])), 0);
    assert_eq!(code(&idsim(&["scan", "--bogus"])), 1);
    assert_eq!(code(&idsim(&[])), 1);
    assert_eq!(code(&idsim(&["report", "a", "b", "--format", "xml"])), 1);
}

#[test]
fn config_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("idsim.json");
    std::fs::write(&config, r#"{"format": "markdown"}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_idsim"))
        .args(["analyze", p(&gold("listing14"))])
        .env("IDSIM_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("| Project |"));

    std::fs::write(&config, r#"{"classify": {"colliding_threshold": 2.0}}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_idsim"))
        .args(["analyze", p(&gold("listing14"))])
        .env("IDSIM_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
