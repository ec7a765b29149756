use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn opencat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opencat"))
        .args(args)
        .env_remove("OPENCAT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

const TRIANGLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/triangle_boundary.sset");

#[test]
fn exit_codes() {
    assert_eq!(opencat(&["verify", "nerve-ak", "--model", "cycle:6", "--k", "1"]).status.code(), Some(0));
    let small = opencat(&["verify", "nerve-ak", "--model", "cycle:2", "--k", "1"]);
    assert_eq!(small.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&small.stderr).contains("model too small"));
    assert_eq!(opencat(&["verify", "nerve-ak", "--model", "interval:5", "--k", "2"]).status.code(), Some(2));
    assert_eq!(opencat(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(opencat(&["verify", "terminal-j"]).status.code(), Some(2));
    assert_eq!(opencat(&["verify", "nerve-ak", "--model", "sphere:3"]).status.code(), Some(2));
    assert_eq!(opencat(&["verify", "refinement", "--model", "cycle:6", "--subbasis", "stride:x"]).status.code(), Some(2));
    assert_eq!(opencat(&["verify", "bary", "--count", "10", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(opencat(&["--help"]).status.code(), Some(0));
}

#[test]
fn thomason_batch() {
    let out = opencat(&["verify", "thomason", "--seed", "7", "--count", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("20/20 pass\n"));
}

#[test]
fn nerve_ak_jsonl() {
    let out = opencat(&["verify", "nerve-ak", "--model", "cycle:6", "--k", "1", "--max-degree", "1", "--format", "jsonl"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["v"], 1);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["left"]["betti"], serde_json::json!([2, 1]));
    assert_eq!(r["right"]["betti"], serde_json::json!([2, 1]));
    assert_eq!(r["degrees_valid"], 1);
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn homology_command() {
    let out = opencat(&["homology", "--input", TRIANGLE, "--max-degree", "1", "--format", "jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["homology"]["betti"], serde_json::json!([1, 1]));

    let out = opencat(&["homology", "--model", "interval:3", "--k", "1", "--max-degree", "1", "--format", "jsonl"]);
    assert_eq!(json_lines(&out)[0]["homology"]["betti"], serde_json::json!([2, 0]));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sset");
    fs::write(&bad, "top 1 complete\ndim 0 1\n").unwrap();
    assert_eq!(opencat(&["homology", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(opencat(&["homology"]).status.code(), Some(2));
}

#[test]
fn truncated_nerves_report_unknown_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n.sset");
    let out = opencat(&["nerve", "--model", "cycle:5", "--k", "1", "--p", "1", "--max-degree", "0", "--output", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = opencat(&["homology", "--input", file.to_str().unwrap(), "--max-degree", "3"]);
    let text = stdout(&out);
    assert!(text.contains("H1 = ?") && text.contains("H3 = ?"), "{text}");
}

#[test]
fn config_space() {
    let out = opencat(&["config-space", "--model", "cycle:6", "--k", "2", "--format", "jsonl"]);
    let lines = json_lines(&out);
    let betti: Vec<Value> = lines.iter().map(|l| l["homology"]["betti"].clone()).collect();
    assert_eq!(betti, vec![serde_json::json!([1, 0]), serde_json::json!([1, 1]), serde_json::json!([1, 1])]);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let args = ["homology", "--model", "cycle:6", "--k", "2", "--p", "1", "--max-degree", "1", "--format", "jsonl", "--cache-dir", c];
    let plain = opencat(&args[..11]);
    let first = opencat(&args);
    let second = opencat(&args);
    assert_eq!(stdout(&plain), stdout(&first));
    assert_eq!(stdout(&first), stdout(&second));
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);

    // a different degree is a different key
    let mut other = args.to_vec();
    other[8] = "2";
    opencat(&other);
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 2);

    for e in &entries {
        fs::write(e, "garbage").unwrap();
    }
    assert_eq!(stdout(&opencat(&args)), stdout(&first));
    assert!(fs::read_to_string(&entries[0]).unwrap().starts_with('{'));
}

#[test]
fn cache_env_and_unwritable_dir() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("file");
    fs::write(&file, "").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_opencat"))
        .args(["homology", "--input", TRIANGLE])
        .env("OPENCAT_CACHE_DIR", file.join("sub"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("caching disabled"));

    let env_dir = dir.path().join("env-cache");
    let out = Command::new(env!("CARGO_BIN_EXE_opencat"))
        .args(["homology", "--input", TRIANGLE])
        .env("OPENCAT_CACHE_DIR", &env_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(&env_dir).unwrap().count(), 1);
}

#[test]
fn cache_does_not_change_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    let args = ["verify", "refinement", "--model", "cycle:6", "--k", "2", "--p", "1", "--format", "jsonl"];
    let plain = stdout(&opencat(&args));
    let mut cached = args.to_vec();
    cached.extend(["--cache-dir", c]);
    assert_eq!(stdout(&opencat(&cached)), plain);
    assert_eq!(stdout(&opencat(&cached)), plain);
}

#[test]
fn bench() {
    let empty = opencat(&["bench", "--corpus", ""]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).is_empty());

    let run = |seed: &str| {
        json_lines(&opencat(&["bench", "--seed", seed, "--format", "jsonl"]))
            .iter()
            .map(|r| r["hash"].as_str().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(run("4"), run("4"));
    assert_ne!(run("4"), run("5"));
    let rows = json_lines(&opencat(&["bench", "--corpus", "ak:cycle:6:2,group:3", "--format", "jsonl"]));
    assert!(rows[0]["ratio"].as_f64().unwrap() > 1.0);
    assert_eq!(opencat(&["bench", "--corpus", "nonsense"]).status.code(), Some(2));
}
