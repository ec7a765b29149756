//! `opencat`: run verifications, compute homology, benchmark the engine.
//!
//! Exit status is 0 when every check passes, 1 when any check does not, and
//! 2 on usage or input errors.

mod bench;
mod cache;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use opencat::homology::{CoeffMode, Engine, HomologyCache, HomologySummary};
use opencat::manifolds::{
    build_ak_bkp, build_bk, config_complex, family_from_spec, ManifoldError, ManifoldModel, OpenSetRep,
};
use opencat::sset::text::{parse_sset, write_sset};
use opencat::sset::nerve;
use opencat::theorems::{acceptance_plan, run, CheckReport, CheckSpec, PlannedCheck, TheoremError, Verdict};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use cache::DirCache;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Homology(#[from] opencat::homology::HomologyError),
    #[error(transparent)]
    Simplicial(#[from] opencat::sset::SsetError),
    #[error(transparent)]
    Category(#[from] opencat::fincat::FinCatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coeff {
    Integer,
    F2First,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    NerveAk,
    Thomason,
    Fiber,
    TerminalJ,
    Decomposition,
    Refinement,
    Bary,
    Semidirect,
    Engine,
    /// Every acceptance check.
    Suite,
}

#[derive(Parser, Debug)]
#[command(name = "opencat", version, about = "Finite models of configuration categories and their homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Manifold model: interval:N, cycle:N or grid:MxN.
    #[arg(long, global = true)]
    model: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    k: usize,
    #[arg(long, global = true)]
    p: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    q: usize,
    /// Open set V: `all`, `empty` or point ranges such as `0..2+5`.
    #[arg(long, global = true, default_value = "all")]
    region: String,
    /// Ball family: `full` or `stride:S`.
    #[arg(long, global = true)]
    subbasis: Option<String>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "integer")]
    coeff: Coeff,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Instances in randomized batches.
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Worker threads; output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    #[arg(long, global = true, env = "OPENCAT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check, or a seeded batch of it, and print its reports.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Homology of a simplicial set file, or of the nerve of A_k(B_k)_p(V).
    Homology {
        /// Simplicial set in the text format written by `nerve`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Time chains, coreduction and Smith normal form on a seeded corpus.
    Bench {
        #[arg(long, default_value = bench::DEFAULT_CORPUS)]
        corpus: String,
    },
    /// Homology of the configuration complexes for j = 0..=k.
    ConfigSpace,
    /// Write the nerve of A_k(B_k)_p(V) in the simplicial set text format.
    Nerve {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `opencat --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, CliError> {
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let cache = cli.cache_dir.as_deref().and_then(DirCache::open);
    let mut engine = Engine {
        coeff: match cli.coeff {
            Coeff::Integer => CoeffMode::Integer,
            Coeff::F2First => CoeffMode::F2First,
        },
        ..Engine::default()
    };
    if let Some(c) = &cache {
        engine = engine.with_cache(c as &dyn HomologyCache);
    }
    match &cli.command {
        Command::Verify { check } => verify(cli, *check, &engine),
        Command::Homology { input } => homology(cli, input.as_ref(), &engine),
        Command::Bench { corpus } => {
            let rows = bench::run(corpus, cli.seed, cli.max_degree.unwrap_or(2))?;
            let mut out = std::io::stdout().lock();
            if cli.format == Format::Table && !rows.is_empty() {
                writeln!(out, "{:<22} {:<12} {:>8} {:>8} {:>6} {:>10} {:>10} {:>10}", "entry", "hash", "before", "after", "ratio", "chains ms", "reduce ms", "smith ms").ok();
            }
            for r in &rows {
                match cli.format {
                    Format::Jsonl => writeln!(out, "{}", serde_json::to_string(r).expect("rows serialize")),
                    Format::Table => writeln!(
                        out,
                        "{:<22} {:<12} {:>8} {:>8} {:>6.2} {:>10.2} {:>10.2} {:>10.2}",
                        r.entry, r.hash, r.cells_before, r.cells_after, r.ratio, r.chains_ms, r.coreduce_ms, r.smith_ms
                    ),
                }
                .ok();
            }
            Ok(true)
        }
        Command::ConfigSpace => config_space(cli, &engine),
        Command::Nerve { output } => {
            let (x, _) = string_nerve(cli)?;
            let text = write_sset(&x);
            match output {
                Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

fn model(cli: &Cli) -> Result<ManifoldModel, CliError> {
    let spec = cli.model.as_deref().ok_or_else(|| CliError::Usage("--model is required".into()))?;
    Ok(spec.parse()?)
}

/// The specs a `verify` invocation runs, in output order.
fn plan(cli: &Cli, check: Check) -> Result<Vec<PlannedCheck>, CliError> {
    let one = |spec| Ok(vec![PlannedCheck { criterion: 0, spec }]);
    let degree = cli.max_degree.unwrap_or(1);
    let region = || cli.region.clone();
    let model_spec = || model(cli).map(|m| m.to_string());
    let batch = |default: usize, f: &dyn Fn(u64) -> CheckSpec| {
        Ok((0..cli.count.unwrap_or(default) as u64).map(|i| PlannedCheck { criterion: 0, spec: f(i) }).collect())
    };
    match check {
        Check::Suite => Ok(acceptance_plan(cli.seed)),
        Check::NerveAk => one(CheckSpec::NerveAk { model: model_spec()?, k: cli.k, max_degree: degree, sweep: 2 }),
        Check::Thomason => {
            let d = cli.max_degree.unwrap_or(2);
            batch(20, &|instance| CheckSpec::Thomason { seed: cli.seed, instance, max_degree: d })
        }
        Check::Fiber => batch(50, &|instance| CheckSpec::Fiber { seed: cli.seed, instance }),
        Check::TerminalJ => one(CheckSpec::TerminalJ { model: model_spec()?, k: cli.k, q: cli.q, region: region() }),
        Check::Decomposition => {
            one(CheckSpec::Decomposition { model: model_spec()?, k: cli.k, p: cli.p.unwrap_or(1), region: region() })
        }
        Check::Refinement => one(CheckSpec::Refinement {
            model: model_spec()?,
            k: cli.k,
            p: cli.p.unwrap_or(0),
            region: region(),
            subbasis: cli.subbasis.clone().unwrap_or_else(|| "stride:2".into()),
            max_degree: degree,
        }),
        Check::Bary => one(CheckSpec::Bary { seed: cli.seed, count: cli.count.unwrap_or(10_000) }),
        Check::Semidirect => one(CheckSpec::Semidirect { max_degree: degree }),
        Check::Engine => one(CheckSpec::Engine { seed: cli.seed, count: cli.count.unwrap_or(300) }),
    }
}

fn verify(cli: &Cli, check: Check, engine: &Engine) -> Result<bool, CliError> {
    let plan = plan(cli, check)?;
    let suite = check == Check::Suite;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().expect("thread pool");
    let results: Vec<Result<CheckReport, TheoremError>> = pool.install(|| {
        plan.par_iter()
            .map(|c| {
                let start = Instant::now();
                run(&c.spec, engine).map(|mut r| {
                    if cli.timings {
                        r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
                    }
                    if suite {
                        r.params.insert("criterion".into(), json!(c.criterion));
                    }
                    r
                })
            })
            .collect()
    });
    let mut reports = Vec::with_capacity(results.len());
    for (c, r) in plan.iter().zip(results) {
        match r {
            Ok(r) => reports.push(r),
            // a failing precondition is a usage error for a single check
            Err(e) if !suite => return Err(e.into()),
            Err(e) => reports.push(
                CheckReport::new(&spec_name(&c.spec), Verdict::Fail)
                    .param("criterion", c.criterion)
                    .note(&format!("error: {e}")),
            ),
        }
    }
    Ok(emit(&reports, cli.format, &mut std::io::stdout().lock()))
}

/// Prints reports in order; true when every one passed.
fn emit(reports: &[CheckReport], format: Format, out: &mut impl Write) -> bool {
    for r in reports {
        let line = match format {
            Format::Jsonl => r.to_json_line(),
            Format::Table => table_line(r),
        };
        writeln!(out, "{line}").ok();
    }
    let passed = reports.iter().filter(|r| r.verdict.is_pass()).count();
    if format == Format::Table && reports.len() > 1 {
        writeln!(out, "{passed}/{} pass", reports.len()).ok();
    }
    passed == reports.len()
}

fn spec_name(spec: &CheckSpec) -> String {
    serde_json::to_value(spec).expect("specs serialize")["check"].as_str().unwrap_or("check").to_string()
}

fn table_line(r: &CheckReport) -> String {
    let verdict = serde_json::to_value(r.verdict).expect("verdicts serialize");
    let params: Vec<String> = r
        .params
        .iter()
        .map(|(k, v)| match v.as_str() {
            Some(s) => format!("{k}={s}"),
            None => format!("{k}={v}"),
        })
        .collect();
    let mut line = format!("{:<24} {:<14} {}", verdict.as_str().unwrap_or("?"), r.name, params.join(" "));
    if let (Some(l), Some(rt)) = (&r.left, &r.right) {
        line.push_str(&format!(" | left {l} | right {rt}"));
    }
    if let Some(d) = r.degrees_valid {
        line.push_str(&format!(" | through degree {d}"));
    }
    if let Some(s) = &r.stabilization {
        line.push_str(&format!(" | {}", s.verdict));
    }
    if let Some(t) = r.wall_time_ms {
        line.push_str(&format!(" | {t} ms"));
    }
    for n in r.notes.iter().filter(|n| n.starts_with("error")) {
        line.push_str(&format!(" | {n}"));
    }
    line
}

/// Nerve of `A_k(B_k)_p(V)` through `max_degree + 1`, with a description.
fn string_nerve(cli: &Cli) -> Result<(opencat::sset::SimplicialSet, String), CliError> {
    let m = model(cli)?;
    let family = family_from_spec(&m, cli.subbasis.as_deref().unwrap_or("full"))?;
    let bundle = build_bk(&m, &family, cli.k)?;
    let v = OpenSetRep::parse(&m, &cli.region)?;
    let p = cli.p.unwrap_or(0);
    let strings = build_ak_bkp(&bundle, p, &v);
    let top = cli.max_degree.unwrap_or(1) + 1;
    let desc = format!("nerve of A_{}(B_{})_{p}({v}) on {m}, {} objects", cli.k, cli.k, strings.len());
    Ok((nerve(&strings.category, top).sset, desc))
}

fn print_summary(cli: &Cli, what: &str, s: &HomologySummary, extra: serde_json::Value) {
    match cli.format {
        Format::Jsonl => {
            let mut v = json!({ "v": opencat::theorems::REPORT_VERSION, "input": what, "homology": s });
            if let (Some(obj), Some(extra)) = (v.as_object_mut(), extra.as_object()) {
                obj.extend(extra.clone());
            }
            println!("{v}");
        }
        Format::Table => {
            let valid = s.valid_through.map_or("nothing".to_string(), |d| format!("through degree {d}"));
            println!("{what}: {s} (valid {valid}; Betti {})", s.betti_string());
        }
    }
}

fn homology(cli: &Cli, input: Option<&PathBuf>, engine: &Engine) -> Result<bool, CliError> {
    let degree = cli.max_degree.unwrap_or(2);
    let (x, what) = match input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            (parse_sset(&text)?, path.display().to_string())
        }
        None if cli.model.is_some() => string_nerve(cli)?,
        None => return Err(CliError::Usage("homology needs --input FILE or --model".into())),
    };
    let (s, stats) = engine.homology_with_stats(&x, degree)?;
    if cli.format == Format::Table && cli.timings {
        eprintln!("cells {:?} -> {:?}, cache hit: {}", stats.ranks_before, stats.ranks_after, stats.cache_hit);
    }
    print_summary(cli, &what, &s, json!({}));
    Ok(true)
}

fn config_space(cli: &Cli, engine: &Engine) -> Result<bool, CliError> {
    let m = model(cli)?;
    let degree = cli.max_degree.unwrap_or(1);
    for j in 0..=cli.k {
        let x = config_complex(&m, j)?;
        let s = engine.homology(&x, degree)?;
        let cells: Vec<usize> = (0..=x.top()).map(|n| x.count(n)).collect();
        print_summary(cli, &format!("configurations of {j} points on {m}"), &s, json!({ "j": j, "cells": cells }));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn any_non_pass_verdict_fails_the_run() {
        let pass = CheckReport::new("bary", Verdict::Pass);
        let mut buf = Vec::new();
        assert!(emit(&[pass.clone(), pass.clone()], Format::Table, &mut buf));
        assert!(String::from_utf8(buf).unwrap().ends_with("2/2 pass\n"));
        for v in [Verdict::Fail, Verdict::Inconclusive, Verdict::InconclusiveTruncation] {
            let mut buf = Vec::new();
            assert!(!emit(&[pass.clone(), CheckReport::new("bary", v)], Format::Jsonl, &mut buf));
            assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
        }
    }

    #[test]
    fn table_lines_show_both_sides() {
        let r = run(&CheckSpec::Semidirect { max_degree: 1 }, &Engine::default()).unwrap();
        let line = table_line(&r);
        assert!(line.starts_with("pass"), "{line}");
        assert!(line.contains("left H0 = Z, H1 = Z/2 | right H0 = Z, H1 = Z/2"), "{line}");
    }
}
