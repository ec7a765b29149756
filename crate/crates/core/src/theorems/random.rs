//! Seeded generators for randomized checks. Instance `i` of a batch draws
//! from its own stream, so batches are reproducible under any scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{CatFunctor, CatValuedFunctor, FinCategory, FinPoset};
use crate::sset::{SimplicialFunctor, SimplicialSet};

/// The generator for instance `index` of the batch `salt`.
pub fn instance_rng(seed: u64, salt: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

/// A poset on `0..n` for which the natural order is a linear extension.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> FinPoset {
    let mut below = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(0.45) {
                below[i][j] = true;
            }
        }
    }
    // transitive closure in linear-extension order
    for j in 0..n {
        for i in 0..j {
            if below[i][j] {
                for h in 0..i {
                    if below[h][i] {
                        below[h][j] = true;
                    }
                }
            }
        }
    }
    FinPoset::from_leq((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b && (a == b || below[a][b]))
        .expect("closure of a DAG is a poset")
}

/// A random order-preserving map `P -> Q`, constant when the greedy attempt
/// gets stuck.
pub fn random_monotone(rng: &mut impl Rng, p: &FinPoset, q: &FinPoset) -> Vec<usize> {
    let mut f = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let mut cands: Vec<usize> = (0..q.len()).filter(|&y| (0..x).all(|w| !p.leq(w, x) || q.leq(f[w], y))).collect();
        cands.shuffle(rng);
        match cands.first() {
            Some(&y) => f.push(y),
            None => return vec![rng.gen_range(0..q.len()); p.len()],
        }
    }
    f
}

/// The functor between poset categories induced by a monotone map.
pub fn monotone_functor(f: &[usize], source: &FinCategory, target: &FinCategory) -> CatFunctor {
    let morphisms = (0..source.num_morphisms())
        .map(|m| target.hom(f[source.source(m)], f[source.target(m)]).next().expect("monotone"))
        .collect();
    CatFunctor::new(f.to_vec(), morphisms)
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// A functor from a random poset with at most `max_objects` objects to posets
/// with at most `max_value` elements.
pub fn random_cat_functor(rng: &mut impl Rng, max_objects: usize, max_value: usize) -> CatValuedFunctor {
    let n = rng.gen_range(1..=max_objects);
    let base_poset = random_poset(rng, n);
    let value_posets: Vec<FinPoset> = (0..n)
        .map(|_| {
            let m = rng.gen_range(1..=max_value);
            random_poset(rng, m)
        })
        .collect();
    // maps[a][c] = F(a <= c) for a < c
    let mut maps: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; n];
    for c in 0..n {
        let below: Vec<usize> = (0..c).filter(|&a| base_poset.leq(a, c)).collect();
        let covers: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&b| !below.iter().any(|&m| m != b && base_poset.leq(b, m)))
            .collect();
        let mut chosen = None;
        for _ in 0..8 {
            let cover_maps: Vec<Vec<usize>> =
                covers.iter().map(|&b| random_monotone(rng, &value_posets[b], &value_posets[c])).collect();
            let mut cand: Vec<Option<Vec<usize>>> = vec![None; n];
            let mut ok = true;
            for (bi, &b) in covers.iter().enumerate() {
                cand[b] = Some(cover_maps[bi].clone());
                for &a in &below {
                    if a == b || !base_poset.leq(a, b) {
                        continue;
                    }
                    let via = compose(&cover_maps[bi], maps[a][b].as_ref().expect("earlier"));
                    match &cand[a] {
                        Some(existing) if *existing != via => ok = false,
                        _ => cand[a] = Some(via),
                    }
                }
            }
            if ok {
                chosen = Some(cand);
                break;
            }
        }
        let cand = chosen.unwrap_or_else(|| {
            let x = rng.gen_range(0..value_posets[c].len());
            (0..n).map(|a| (a < c && base_poset.leq(a, c)).then(|| vec![x; value_posets[a].len()])).collect()
        });
        for a in 0..c {
            maps[a][c] = cand[a].clone();
        }
    }
    let base = base_poset.to_category();
    let values: Vec<FinCategory> = value_posets.iter().map(FinPoset::to_category).collect();
    let actions = (0..base.num_morphisms())
        .map(|m| {
            let (a, c) = (base.source(m), base.target(m));
            if a == c {
                CatFunctor::identity(&values[a])
            } else {
                monotone_functor(maps[a][c].as_ref().expect("every relation has a map"), &values[a], &values[c])
            }
        })
        .collect();
    let f = CatValuedFunctor { base, values, actions };
    debug_assert!(f.validate().is_ok());
    f
}

/// Nerves of a random poset-valued functor; values are complete.
pub fn random_simplicial_functor(rng: &mut impl Rng, max_objects: usize, max_value: usize) -> SimplicialFunctor {
    let f = random_cat_functor(rng, max_objects, max_value);
    SimplicialFunctor::nerve_of(&f, max_value.saturating_sub(1).max(1))
}

/// A simplicial complex on `vertices` points with facets of at most
/// `max_dim + 1` vertices.
pub fn random_complex(rng: &mut impl Rng, vertices: usize, max_dim: usize, facets: usize) -> SimplicialSet {
    let all: Vec<usize> = (0..vertices).collect();
    let fs: Vec<Vec<usize>> = (0..facets)
        .map(|_| {
            let size = rng.gen_range(1..=max_dim + 1);
            let mut f: Vec<usize> = all.choose_multiple(rng, size).copied().collect();
            f.sort_unstable();
            f
        })
        .collect();
    SimplicialSet::from_complex(&fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functors_are_valid() {
        for i in 0..200 {
            let mut rng = instance_rng(11, 1, i);
            let f = random_cat_functor(&mut rng, 4, 4);
            f.validate().unwrap();
            assert!(f.base.num_objects() <= 4 && f.values.iter().all(|v| v.num_objects() <= 4));
            let s = random_simplicial_functor(&mut instance_rng(11, 2, i), 4, 4);
            s.validate().unwrap();
            assert!(s.values.iter().all(SimplicialSet::is_complete));
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = random_cat_functor(&mut instance_rng(5, 1, 3), 4, 4);
        let b = random_cat_functor(&mut instance_rng(5, 1, 3), 4, 4);
        assert_eq!(a.values, b.values);
        assert_eq!(a.actions, b.actions);
    }
}
