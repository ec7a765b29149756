//! The acceptance criteria, one line each. Runs the `opencat` binary and
//! checks the reports it emits; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

const SEED: &str = "0";

fn opencat(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_opencat")).args(args).output().expect("binary runs");
    let elapsed = start.elapsed();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"), elapsed)
}

fn reports(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).expect("one report per line")).collect()
}

fn betti(r: &Value, side: &str) -> Vec<u64> {
    r[side]["betti"].as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

/// Reports of one criterion, their total time, and whether all passed.
fn group(all: &[Value], criterion: u64) -> (Vec<&Value>, Duration, bool) {
    let g: Vec<&Value> = all.iter().filter(|r| r["params"]["criterion"] == criterion).collect();
    let ms: u64 = g.iter().filter_map(|r| r["wall_time_ms"].as_u64()).sum();
    let pass = !g.is_empty() && g.iter().all(|r| r["verdict"] == "pass");
    (g, Duration::from_millis(ms), pass)
}

fn within(t: Duration, limit: Duration) -> bool {
    t < limit
}

fn homology_check(all: &[Value], criterion: u64, expect: &[u64], limit: Duration, stable: bool) -> Outcome {
    let (g, t, pass) = group(all, criterion);
    let r = g.first().copied().unwrap_or(&Value::Null);
    let (l, rt) = (betti(r, "left"), betti(r, "right"));
    let stab = !stable || r["stabilization"]["verdict"] == "stable";
    let ok = pass && l == expect && rt == expect && stab && within(t, limit);
    let mut detail = format!("{} on {}: Betti {l:?} vs {rt:?}", r["name"].as_str().unwrap_or("?"), r["params"]["model"]);
    if stable {
        let sweep: Vec<&str> = r["stabilization"]["sweep"]
            .as_array()
            .map(|a| a.iter().filter_map(|e| e["model"].as_str()).collect())
            .unwrap_or_default();
        detail.push_str(&format!(", sweep {sweep:?} {}", r["stabilization"]["verdict"]));
    }
    outcome(ok, format!("{detail} ({t:?})"))
}

fn batch_check(all: &[Value], criterion: u64, expected: usize, limit: Duration, extra: impl Fn(&Value) -> bool) -> Outcome {
    let (g, t, _) = group(all, criterion);
    let passed = g.iter().filter(|r| r["verdict"] == "pass" && extra(r)).count();
    let name = g.first().and_then(|r| r["name"].as_str()).unwrap_or("?");
    outcome(passed == expected && g.len() == expected && within(t, limit), format!("{name}: {passed}/{expected} pass ({t:?})"))
}

fn main() {
    let timed_start = Instant::now();
    let (code, timed, _) = opencat(&["verify", "suite", "--seed", SEED, "--jobs", "1", "--format", "jsonl", "--timings"]);
    let suite_time = timed_start.elapsed();
    let all = reports(&timed);

    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let (c1_code, c1_out, c1_time) = opencat(&["verify", "nerve-ak", "--model", "cycle:6", "--k", "1", "--max-degree", "1", "--format", "jsonl"]);
    let c1 = reports(&c1_out);
    let c1_ok = c1_code == 0
        && c1.len() == 1
        && c1[0]["verdict"] == "pass"
        && betti(&c1[0], "left") == [2, 1]
        && betti(&c1[0], "right") == [2, 1]
        && c1_time < Duration::from_secs(30);
    let suite_c1 = homology_check(&all, 1, &[2, 1], Duration::from_secs(30), false);
    results.push((1, "nerve of A_1 on a circle", outcome(c1_ok && suite_c1.ok, format!("cli exit {c1_code}; {}", suite_c1.detail))));
    results.push((2, "nerve of A_2 on an interval", homology_check(&all, 2, &[3, 0], Duration::from_secs(300), true)));
    results.push((3, "nerve of A_2 on a circle", homology_check(&all, 3, &[3, 2], Duration::from_secs(600), true)));
    results.push((4, "Grothendieck vs homotopy colimit", batch_check(&all, 4, 20, Duration::from_secs(120), |r| r["degrees_valid"] == 2)));
    results.push((5, "inversion action gives S3", {
        let (g, t, pass) = group(&all, 5);
        let iso = g.first().is_some_and(|r| r["witness"]["isomorphic_to_s3"] == true);
        outcome(pass && iso && within(t, Duration::from_secs(1)), format!("one object, isomorphic to S3: {iso} ({t:?})"))
    }));
    results.push((6, "string category decomposition", batch_check(&all, 6, 4, Duration::from_secs(120), |_| true)));
    results.push((7, "comma categories of J have initial objects", batch_check(&all, 7, 8, Duration::from_secs(300), |_| true)));
    results.push((8, "stride-2 refinement", batch_check(&all, 8, 4, Duration::from_secs(600), |r| r["degrees_valid"] == 1)));
    results.push((9, "vertex fibers", batch_check(&all, 9, 50, Duration::from_secs(60), |_| true)));
    results.push((10, "barycentric retraction", batch_check(&all, 10, 1, Duration::from_secs(10), |r| r["params"]["count"] == 10_000)));
    results.push((11, "homology engine soundness", batch_check(&all, 11, 1, Duration::from_secs(120), |r| {
        r["witness"]["kinds"]["complex"].as_u64().is_some_and(|n| n >= 100)
    })));

    let (code_a, a, _) = opencat(&["verify", "suite", "--seed", SEED, "--jobs", "1", "--format", "jsonl"]);
    let (code_b, b, _) = opencat(&["verify", "suite", "--seed", SEED, "--jobs", "4", "--format", "jsonl"]);
    results.push((12, "determinism across --jobs", outcome(
        code_a == code_b && !a.is_empty() && a == b,
        format!("--jobs 1 and --jobs 4: {} bytes, identical: {}", a.len(), a == b),
    )));

    let mut failed = 0;
    for (n, title, o) in &results {
        let mark = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("criterion {n:>2} {mark}  {title}: {}", o.detail);
    }
    println!("suite exit {code}, {} reports in {suite_time:?}; {}/{} criteria pass", all.len(), results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
