use std::collections::BTreeMap;

use num_integer::Integer;
use rand::Rng;
use serde_json::json;

use crate::fincat::FinCategory;
use crate::homology::{betti_f2, coreduce, homology_upto, normalized_chains, smith};
use crate::sset::{nerve, SimplicialSet};

use super::random::{instance_rng, random_complex, random_poset};
use super::{CheckReport, Verdict};

const ENGINE_SALT: u64 = 3;

/// Instance `i`: a random simplicial complex, the nerve of a random poset, or
/// a truncated nerve of a cyclic group, cycling through the three kinds.
fn instance(seed: u64, i: u64) -> (&'static str, SimplicialSet) {
    let mut rng = instance_rng(seed, ENGINE_SALT, i);
    match i % 3 {
        0 => {
            let v = rng.gen_range(4..9);
            let facets = rng.gen_range(2..10);
            ("complex", random_complex(&mut rng, v, 3, facets))
        }
        1 => {
            let n = rng.gen_range(2..7);
            ("poset-nerve", nerve(&random_poset(&mut rng, n).to_category(), 4).sset)
        }
        _ => {
            let n = rng.gen_range(2..6);
            ("group-nerve", nerve(&FinCategory::cyclic_group(n), 4).sset)
        }
    }
}

/// Soundness of the homology engine on `count` seeded instances: boundaries
/// square to zero, coreduction preserves homology, invariant factors form a
/// divisibility chain and the mod 2 dimensions satisfy the universal
/// coefficient identity.
pub fn verify_engine(seed: u64, count: usize) -> CheckReport {
    let mut failures: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let mut cells_before = 0usize;
    let mut cells_after = 0usize;
    for i in 0..count as u64 {
        let (kind, x) = instance(seed, i);
        *kinds.entry(kind).or_default() += 1;
        let cc = match normalized_chains(&x, x.top()) {
            Ok(cc) => cc,
            Err(_) => {
                failures.entry("chains").or_default().push(i);
                continue;
            }
        };
        if cc.first_nonzero_square().is_some() {
            failures.entry("boundary squared").or_default().push(i);
        }
        let top = cc.top();
        let direct = homology_upto(&cc, top);
        let (reduced, _) = coreduce(&cc);
        cells_before += cc.total_rank();
        cells_after += reduced.total_rank();
        if homology_upto(&reduced, top) != direct || reduced.euler_characteristic() != cc.euler_characteristic() {
            failures.entry("coreduction").or_default().push(i);
        }
        let chain_ok = (1..=top).all(|n| smith(cc.boundary(n)).windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        if !chain_ok || !direct.torsion_is_normalized() {
            failures.entry("divisibility").or_default().push(i);
        }
        if let Some(v) = cc.valid_through() {
            if !betti_f2(&cc, v).is_ok_and(|f2| direct.f2_consistent(&f2)) {
                failures.entry("f2 identity").or_default().push(i);
            }
        }
    }
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    CheckReport::new("engine", verdict).param("seed", seed).param("count", count).witness(json!({
        "kinds": kinds,
        "cells_before_reduction": cells_before,
        "cells_after_reduction": cells_after,
        "failures": failures,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_passes() {
        let r = verify_engine(1, 60);
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
        assert_eq!(r.witness["kinds"]["complex"], 20);
    }
}
