use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ohba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohba"))
        .args(args)
        .env_remove("OHBA_CACHE_PATH")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn ohba_cached(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohba"))
        .args(args)
        .env("OHBA_CACHE_PATH", cache)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn names(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn tau_on_small_side_two_uses_the_staircase() {
    let o = ohba(&["tau", "0", "2", "7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["exact"], true);
    assert_eq!(v["value"], 1);
    assert!(names(&v["lower_by"]).contains(&"a2-staircase-exact".to_string()));
}

#[test]
fn tau_in_the_certified_window_is_exact() {
    let v = json(&ohba(&["tau", "1", "3", "100", "--format", "json"]));
    assert_eq!(v["value"], 2);
    assert_eq!(names(&v["lower_by"]), ["block-transversal-lower"]);
    assert_eq!(names(&v["upper_by"]), ["range-count-upper"]);
}

#[test]
fn tau_sandwich_reports_an_interval_with_provenance() {
    let o = ohba(&["tau", "0", "4", "4", "--method", "sandwich", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["exact"], false);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(2), Some(3)));
    assert_eq!(names(&v["lower_by"]), ["partition-cover-lower"]);
    assert_eq!(names(&v["upper_by"]), ["vertex-count-upper"]);
}

#[test]
fn tau_formula_refuses_without_a_closed_form() {
    let o = ohba(&["tau", "0", "4", "4", "--method", "formula"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));
    assert_eq!(code(&ohba(&["tau", "0", "2", "7", "--method", "formula"])), 0);
}

#[test]
fn tau_search_matches_the_staircase_and_falls_back_when_refused() {
    for b in 2..=8u64 {
        let v = json(&ohba(&["tau", "0", "2", &b.to_string(), "--method", "search", "--format", "json"]));
        let want = (b as f64).sqrt().floor() as u64 - 1;
        assert_eq!(v["value"].as_u64(), Some(want), "b = {b}");
    }
    let o = ohba(&["tau", "0", "4", "4", "--method", "search", "--format", "json"]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["exact"], false);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(2), Some(3)));
    assert!(v["refusal"].as_str().unwrap().starts_with("refused"));
}

#[test]
fn verify_examples() {
    let o = ohba(&["verify", "--thm", "4", "--s", "0", "--l", "2", "--b", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS"));
    let o = ohba(&["verify", "--thm", "7", "--s", "0", "--l", "3", "--a", "4", "--b", "9"]);
    assert_eq!(code(&o), 0);
    let o = ohba(&["verify", "--thm", "6", "--s", "0", "--l", "2", "--a", "4", "--b", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("threshold"));
}

#[test]
fn verify_rejects_the_wrong_partition_branch() {
    let o = ohba(&["verify", "--thm", "partition-divisible", "--s", "0", "--l", "3", "--a", "4", "--b", "9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn construct_writes_files_that_check_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t4");
    let o = ohba(&["construct", "--thm", "4", "--s", "0", "--l", "2", "--b", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    for f in ["graph.txt", "lists.txt", "spec.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let spec: Value = serde_json::from_str(&std::fs::read_to_string(out.join("spec.json")).unwrap()).unwrap();
    assert_eq!(spec["derived"]["family_size"], 9);

    let lists = out.join("lists.txt");
    let o = ohba(&["check", "--join", "1", "2", "9", "--lists", lists.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["colorable"], false);
    let o = ohba(&["check", "--graph", out.join("graph.txt").to_str().unwrap(), "--lists", lists.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_larger_block_transversal_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t4");
    let o = ohba(&["construct", "--thm", "4", "--s", "1", "--l", "2", "--b", "96", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = ohba(&["check", "--join", "1", "3", "96", "--lists", out.join("lists.txt").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_colorable_instance_prints_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let lists = dir.path().join("lists.txt");
    std::fs::write(&lists, "k 2\nx1: 1 2\nx2: 3 4\ny1: 1 3\ny2: 1 4\ny3: 2 3\n").unwrap();
    let o = ohba(&["check", "--join", "0", "2", "3", "--lists", lists.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["colorable"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn check_reports_the_bad_line() {
    let dir = tempfile::tempdir().unwrap();
    let lists = dir.path().join("lists.txt");
    std::fs::write(&lists, "k 2\nx1: 1 2\nx2: 3 four\n").unwrap();
    let o = ohba(&["check", "--join", "0", "2", "3", "--lists", lists.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(code(&ohba(&["tau", "0", "2"])), 2);
    assert_eq!(code(&ohba(&["tau", "0", "5", "3"])), 2);
    assert_eq!(code(&ohba(&["bounds", "--a", "2", "--from", "2", "--to", "3", "--format", "nope"])), 2);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn bounds_table_staircase() {
    let o = ohba(&["bounds", "--a", "2", "--s", "0", "--from", "2", "--to", "20"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("b,lower,upper,exact,lower_by,upper_by,bounds\n"));
    let exact: Vec<String> = csv_rows(&text).into_iter().map(|r| r[3].clone()).collect();
    let want: Vec<String> = (2..=20u64).map(|b| ((b as f64).sqrt().floor() as u64 - 1).to_string()).collect();
    assert_eq!(exact, want);
}

#[test]
fn bounds_table_windows() {
    let rows = csv_rows(&stdout(&ohba(&["bounds", "--a", "3", "--s", "1", "--from", "90", "--to", "130"])));
    for r in rows {
        let b: u64 = r[0].parse().unwrap();
        match b {
            90..=95 => assert_eq!(r[3], "1", "b = {b}"),
            96..=124 => assert_eq!(r[3], "2", "b = {b}"),
            _ => assert_eq!((r[3].as_str(), r[1].as_str(), r[2].as_str()), ("", "2", "3"), "b = {b}"),
        }
    }
    let rows = csv_rows(&stdout(&ohba(&["bounds", "--a", "4", "--s", "2", "--from", "1240", "--to", "1300"])));
    for r in rows {
        let b: u64 = r[0].parse().unwrap();
        if (1250..=1295).contains(&b) {
            assert_eq!(r[3], "2", "b = {b}");
        } else {
            assert_ne!(r[3], "2", "b = {b}");
        }
    }
}

#[test]
fn scan_small_side_two() {
    let v = json(&ohba(&["scan", "0", "--l-max", "3", "--format", "json"]));
    let rows = v["rows"].as_array().unwrap();
    let iv: Vec<(u64, u64)> =
        rows.iter().map(|r| (r["conjectured"][0].as_u64().unwrap(), r["conjectured"][1].as_u64().unwrap())).collect();
    assert_eq!(iv, [(4, 8), (9, 15), (16, 24)]);
    assert!(rows.iter().all(|r| r["whole_interval_certified"] == true));
    assert_eq!(rows[0]["search_lower_endpoint"], "confirmed");
    assert_eq!(rows[1]["search_upper_endpoint"], "confirmed");
}

#[test]
fn scan_marks_partial_certification() {
    let v = json(&ohba(&["scan", "1", "--l-max", "2", "--no-search", "--format", "json"]));
    let row = &v["rows"][1];
    assert_eq!(row["conjectured"], serde_json::json!([96, 249]));
    assert_eq!(row["certified_exact"], serde_json::json!([96, 124]));
    assert_eq!(row["whole_interval_certified"], false);
}

#[test]
fn critical_and_choosable_exit_codes() {
    let v = json(&ohba(&["critical", "1", "2", "3", "--format", "json"]));
    assert_eq!(v["outcome"], "exact");
    assert_eq!(v["value"], 9);
    assert_eq!(code(&ohba(&["critical", "2", "3", "4"])), 3);
    assert_eq!(code(&ohba(&["choosable", "1", "2", "8", "3", "--search-only"])), 0);
    assert_eq!(code(&ohba(&["choosable", "1", "2", "9", "3", "--search-only"])), 1);
    assert_eq!(code(&ohba(&["choosable", "1", "2", "9", "3"])), 1);
}

#[test]
fn deficiency_report() {
    let v = json(&ohba(&["deficiency", "1", "2", "9", "--format", "json"]));
    assert_eq!(v["deficiency"], 1);
    assert_eq!(v["list_chromatic"], 4);
}

#[test]
fn lemmas_are_reproducible_and_hold() {
    let a = ohba(&["lemmas", "--which", "star", "--count", "20"]);
    let b = ohba(&["lemmas", "--which", "star", "--count", "20", "--seed", "1729"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 60);
    assert!(lines.iter().all(|l| l["ok"] == true && l["seed"] == 1729));
    let c = ohba(&["lemmas", "--which", "star", "--count", "20", "--seed", "7"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    for args in [&["tau", "1", "3", "100"][..], &["critical", "1", "2", "3", "--format", "json"], &["bounds", "--a", "2", "--from", "2", "--to", "9"]] {
        let first = ohba_cached(&cache, args);
        let second = ohba_cached(&cache, args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(code(&first), code(&second));
        assert_eq!(first.stdout, ohba(args).stdout);
    }
    let entries = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(entries.lines().count(), 3);
    let e: Value = serde_json::from_str(entries.lines().next().unwrap()).unwrap();
    for field in ["key", "result", "rendered", "engine_version", "timestamp"] {
        assert!(e.get(field).is_some(), "{field}");
    }
}

#[test]
fn cache_hit_preserves_negative_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    assert_eq!(code(&ohba_cached(&cache, &["choosable", "1", "2", "9", "3"])), 1);
    assert_eq!(code(&ohba_cached(&cache, &["choosable", "1", "2", "9", "3"])), 1);
}

#[test]
fn corrupt_cache_is_ignored_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    // a forged entry that would change the answer if it were trusted
    let key = "Tau { s: 0, a: 2, b: 7, method: Sandwich, budget: BudgetArgs { max_assignments: 20000000, max_nodes: 500000000 } } format=None";
    let forged = serde_json::json!({
        "key": key, "result": null, "rendered": "forged\n", "exit_code": 0,
        "engine_version": env!("CARGO_PKG_VERSION"), "timestamp": 0
    });
    std::fs::write(&cache, format!("{forged}\nnot json\n")).unwrap();
    let o = ohba_cached(&cache, &["tau", "0", "2", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("tau_0(2,7) = 1"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt"));
}

#[test]
fn no_cache_flag_skips_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let o = ohba(&["--cache", cache.to_str().unwrap(), "--no-cache", "tau", "0", "2", "7"]);
    assert_eq!(code(&o), 0);
    assert!(!cache.exists());
}
