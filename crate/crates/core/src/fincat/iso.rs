use std::collections::HashMap;

use super::{CatFunctor, FinCatError, FinCategory, MorId, ObjId};

/// Default node budget for unhinted isomorphism search.
pub const DEFAULT_ISO_BUDGET: u64 = 1_000_000;

/// A pair of mutually inverse functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub forward: CatFunctor,
    pub backward: CatFunctor,
}

/// Searches for an isomorphism `C -> D`.
///
/// With a hint (an object correspondence `C -> D`) only that correspondence is
/// tried. Without one, object bijections are enumerated with pruning on
/// per-object morphism counts; the search fails with
/// [`FinCatError::BudgetExceeded`] after `budget` nodes.
pub fn categories_isomorphic(
    c: &FinCategory,
    d: &FinCategory,
    hint: Option<&[ObjId]>,
    budget: u64,
) -> Result<Option<Isomorphism>, FinCatError> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return Ok(None);
    }
    let mut nodes = 0u64;
    if let Some(map) = hint {
        if map.len() != c.num_objects() || !is_bijection(map, d.num_objects()) {
            return Ok(None);
        }
        // a hinted check has no budget of its own: thin categories are linear
        return match_morphisms(c, d, map, &mut nodes, u64::MAX);
    }

    let sig = |cat: &FinCategory, o: ObjId| {
        let endo = cat.hom(o, o).count();
        (cat.out_morphisms(o).len(), cat.in_morphisms(o).len(), endo)
    };
    let sig_c: Vec<_> = (0..c.num_objects()).map(|o| sig(c, o)).collect();
    let sig_d: Vec<_> = (0..d.num_objects()).map(|o| sig(d, o)).collect();
    let n = c.num_objects();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut pos = vec![0usize; n + 1];
    let mut i = 0usize;
    if n == 0 {
        return match_morphisms(c, d, &map, &mut nodes, budget);
    }
    loop {
        let mut found = false;
        while pos[i] < n {
            let cand = pos[i];
            pos[i] += 1;
            nodes += 1;
            if nodes > budget {
                return Err(FinCatError::BudgetExceeded(budget));
            }
            if used[cand] || sig_c[i] != sig_d[cand] {
                continue;
            }
            let hom_ok = (0..i).all(|j| {
                c.hom(i, j).count() == d.hom(cand, map[j]).count()
                    && c.hom(j, i).count() == d.hom(map[j], cand).count()
            });
            if hom_ok {
                map[i] = cand;
                used[cand] = true;
                found = true;
                break;
            }
        }
        if found {
            if i + 1 == n {
                if let Some(iso) = match_morphisms(c, d, &map, &mut nodes, budget)? {
                    return Ok(Some(iso));
                }
                used[map[i]] = false;
                map[i] = usize::MAX;
            } else {
                i += 1;
                pos[i] = 0;
            }
        } else {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            used[map[i]] = false;
            map[i] = usize::MAX;
        }
    }
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.iter().all(|&o| o < n && !std::mem::replace(&mut seen[o], true))
}

/// Backtracking over morphism assignments for a fixed object bijection.
fn match_morphisms(
    c: &FinCategory,
    d: &FinCategory,
    obj_map: &[ObjId],
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Isomorphism>, FinCatError> {
    let n = c.num_morphisms();
    let candidates = |m: MorId| -> Vec<MorId> {
        let (s, t) = (obj_map[c.source(m)], obj_map[c.target(m)]);
        if c.is_identity(m) {
            vec![d.identity(s)]
        } else {
            d.hom(s, t).filter(|&x| !d.is_identity(x)).collect()
        }
    };
    let mut hom_sizes: HashMap<(ObjId, ObjId), i64> = HashMap::new();
    for m in 0..n {
        *hom_sizes.entry((obj_map[c.source(m)], obj_map[c.target(m)])).or_default() += 1;
    }
    for m in 0..d.num_morphisms() {
        *hom_sizes.entry((d.source(m), d.target(m))).or_default() -= 1;
    }
    if hom_sizes.values().any(|&v| v != 0) {
        return Ok(None);
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; d.num_morphisms()];
    let mut cands: Vec<Vec<MorId>> = vec![Vec::new(); n];
    let mut pos = vec![0usize; n];
    let mut i = 0usize;
    if n > 0 {
        cands[0] = candidates(0);
    }
    while i < n {
        let m = i;
        let mut found = false;
        while pos[i] < cands[i].len() {
            let cand = cands[i][pos[i]];
            pos[i] += 1;
            *nodes += 1;
            if *nodes > budget {
                return Err(FinCatError::BudgetExceeded(budget));
            }
            if used[cand] {
                continue;
            }
            image[m] = cand;
            if consistent(c, d, &image, m) {
                used[cand] = true;
                found = true;
                break;
            }
            image[m] = usize::MAX;
        }
        if found {
            i += 1;
            if i < n {
                pos[i] = 0;
                cands[i] = candidates(i);
            }
        } else {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            used[image[i]] = false;
            image[i] = usize::MAX;
        }
    }

    let forward = CatFunctor::new(obj_map.to_vec(), image);
    let mut inv_obj = vec![0; obj_map.len()];
    for (a, &b) in obj_map.iter().enumerate() {
        inv_obj[b] = a;
    }
    let mut inv_mor = vec![0; n];
    for (a, &b) in forward.morphism_map.iter().enumerate() {
        inv_mor[b] = a;
    }
    let backward = CatFunctor::new(inv_obj, inv_mor);
    if forward.validate(c, d).is_err() || backward.validate(d, c).is_err() {
        return Ok(None);
    }
    Ok(Some(Isomorphism { forward, backward }))
}

fn consistent(c: &FinCategory, d: &FinCategory, image: &[MorId], m: MorId) -> bool {
    let assigned = |x: MorId| image[x] != usize::MAX;
    for &g in c.out_morphisms(c.target(m)) {
        if assigned(g) {
            let h = c.comp(g, m);
            if assigned(h) && d.compose(image[g], image[m]) != Some(image[h]) {
                return false;
            }
        }
    }
    for &f in c.in_morphisms(c.source(m)) {
        if assigned(f) {
            let h = c.comp(m, f);
            if assigned(h) && d.compose(image[m], image[f]) != Some(image[h]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPoset;

    #[test]
    fn identity_is_found() {
        let c = FinPoset::chain(4).to_category();
        let iso = categories_isomorphic(&c, &c, None, DEFAULT_ISO_BUDGET).unwrap().unwrap();
        assert_eq!(iso.forward, CatFunctor::identity(&c));
    }

    #[test]
    fn discrete_is_not_a_chain() {
        let c = FinCategory::discrete(2);
        let d = FinPoset::chain(2).to_category();
        assert!(categories_isomorphic(&c, &d, None, DEFAULT_ISO_BUDGET).unwrap().is_none());
    }

    #[test]
    fn hint_is_respected() {
        let c = FinPoset::chain(2).to_category();
        let op = c.opposite();
        assert!(categories_isomorphic(&c, &op, Some(&[1, 0]), 10).unwrap().is_some());
        assert!(categories_isomorphic(&c, &op, Some(&[0, 1]), 10).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let c = FinCategory::discrete(8);
        let err = categories_isomorphic(&c, &c.clone(), None, 3);
        // the identity bijection is found first, within 8 object nodes plus morphisms
        assert!(matches!(err, Err(FinCatError::BudgetExceeded(3))));
    }

    #[test]
    fn cyclic_groups_distinguished() {
        let z4 = FinCategory::cyclic_group(4);
        let v4 = FinCategory::from_group_table(&[
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert!(categories_isomorphic(&z4, &v4, None, DEFAULT_ISO_BUDGET).unwrap().is_none());
        assert!(categories_isomorphic(&z4, &z4, None, DEFAULT_ISO_BUDGET).unwrap().is_some());
    }
}
