//! Timing of the homology pipeline on a seeded corpus of nerves.

use std::time::Instant;

use opencat::fincat::FinCategory;
use opencat::homology::{coreduce, normalized_chains, smith};
use opencat::manifolds::{build_bk, enumerate_balls, ManifoldModel};
use opencat::sset::text::content_hash;
use opencat::sset::{nerve, SimplicialSet};
use opencat::theorems::random::{instance_rng, random_complex, random_poset};
use rand::Rng;
use serde::Serialize;

use crate::CliError;

const BENCH_SALT: u64 = 9;

/// Default corpus when `--corpus` is not given.
pub const DEFAULT_CORPUS: &str = "ak:cycle:6:1,ak:interval:6:2,poset:7,group:4,complex:9";

#[derive(Serialize)]
pub struct BenchRow {
    pub entry: String,
    pub hash: String,
    pub cells_before: usize,
    pub cells_after: usize,
    pub ratio: f64,
    pub chains_ms: f64,
    pub coreduce_ms: f64,
    pub smith_ms: f64,
}

/// Entries are comma separated: `ak:MODEL:K` (nerve of `A_k`), `poset:N`
/// (nerve of a random poset), `group:N` (nerve of `Z/N`) and `complex:V`
/// (random complex on `V` vertices).
fn corpus_entry(spec: &str, seed: u64, index: u64, top: usize) -> Result<SimplicialSet, CliError> {
    let mut rng = instance_rng(seed, BENCH_SALT, index);
    let bad = || CliError::Usage(format!("bad corpus entry `{spec}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    Ok(match kind {
        "ak" => {
            let (model, k) = rest.rsplit_once(':').ok_or_else(bad)?;
            let model: ManifoldModel = model.parse()?;
            let bundle = build_bk(&model, &enumerate_balls(&model), num(k)?)?;
            nerve(&bundle.a_category()?, top).sset
        }
        "poset" => nerve(&random_poset(&mut rng, num(rest)?).to_category(), top).sset,
        "group" => nerve(&FinCategory::cyclic_group(num(rest)?.max(1)), top).sset,
        "complex" => {
            let v = num(rest)?.max(1);
            let facets = rng.gen_range(v..=2 * v);
            random_complex(&mut rng, v, 3, facets)
        }
        _ => return Err(bad()),
    })
}

pub fn run(corpus: &str, seed: u64, max_degree: usize) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for (i, spec) in corpus.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        let x = corpus_entry(spec, seed, i as u64, max_degree + 1)?;
        let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let cc = normalized_chains(&x, x.top().min(max_degree + 1))?;
        let chains_ms = ms(t);
        let t = Instant::now();
        let (reduced, _) = coreduce(&cc);
        let coreduce_ms = ms(t);
        let t = Instant::now();
        for n in 1..=reduced.top() {
            smith(reduced.boundary(n));
        }
        let smith_ms = ms(t);
        let (before, after) = (cc.total_rank(), reduced.total_rank());
        rows.push(BenchRow {
            entry: spec.to_string(),
            hash: content_hash(&x)[..12].to_string(),
            cells_before: before,
            cells_after: after,
            ratio: before as f64 / after.max(1) as f64,
            chains_ms,
            coreduce_ms,
            smith_ms,
        });
    }
    Ok(rows)
}
