use std::collections::HashMap;

use serde_json::json;

use crate::fincat::{
    categories_isomorphic, comma_category, grothendieck, CatFunctor, CatValuedFunctor, FinCategory, DEFAULT_ISO_BUDGET,
};
use crate::homology::Engine;
use crate::manifolds::{build_ak_bkp, build_akq_bk, OpenSetRep, PosetBundle};
use crate::sset::{find_isomorphism, hocolim, nerve, vertex_fiber, SimplicialFunctor};

use super::random::{instance_rng, random_cat_functor, random_simplicial_functor};
use super::{CheckReport, TheoremError, Verdict, ISOTOPY_NOTE};

const THOMASON_SALT: u64 = 1;
const FIBER_SALT: u64 = 2;

/// Compares the nerve of the Grothendieck construction with the homotopy
/// colimit of the nerves of the values.
pub fn verify_thomason(engine: &Engine, f: &CatValuedFunctor, through: usize) -> Result<CheckReport, TheoremError> {
    f.validate()?;
    let top = through + 1;
    let g = grothendieck(f)?;
    let left = engine.homology(&nerve(&g.category, top).sset, through)?;
    let h = hocolim(&SimplicialFunctor::nerve_of(f, top), top)?;
    let right = engine.homology(h.sset(), through)?;
    Ok(CheckReport::new("thomason", Verdict::Fail)
        .param("max_degree", through)
        .witness(json!({
            "base_objects": f.base.num_objects(),
            "value_objects": f.values.iter().map(FinCategory::num_objects).collect::<Vec<_>>(),
            "grothendieck_objects": g.category.num_objects(),
            "grothendieck_morphisms": g.category.num_morphisms(),
        }))
        .compare(left, right, through))
}

/// Instance `index` of the seeded batch: a random functor on a poset of at
/// most four objects with poset values of at most four elements.
pub fn thomason_instance(engine: &Engine, seed: u64, index: u64, through: usize) -> Result<CheckReport, TheoremError> {
    let f = random_cat_functor(&mut instance_rng(seed, THOMASON_SALT, index), 4, 4);
    Ok(verify_thomason(engine, &f, through)?.param("seed", seed).param("instance", index))
}

/// `Z/2` acting on `Z/3` by inversion, as a functor on the one-object
/// category of `Z/2`.
pub fn semidirect_functor() -> CatValuedFunctor {
    let base = FinCategory::cyclic_group(2);
    let z3 = FinCategory::cyclic_group(3);
    let inversion = CatFunctor::new(vec![0], vec![0, 2, 1]);
    CatValuedFunctor { actions: vec![CatFunctor::identity(&z3), inversion], values: vec![z3], base }
}

fn s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let ab = [a[b[0]], a[b[1]], a[b[2]]];
                    perms.iter().position(|p| *p == ab).expect("closed")
                })
                .collect()
        })
        .collect()
}

/// The Grothendieck construction of the inversion action is the symmetric
/// group on three letters; also compares the two sides of the homotopy
/// colimit equivalence on it.
pub fn verify_semidirect(engine: &Engine, through: usize) -> Result<CheckReport, TheoremError> {
    let f = semidirect_functor();
    f.validate()?;
    let g = grothendieck(&f)?;
    let s3 = FinCategory::from_group_table(&s3_table())?;
    let iso = categories_isomorphic(&g.category, &s3, None, DEFAULT_ISO_BUDGET)?;
    let report = verify_thomason(engine, &f, through)?;
    let verdict = match (&iso, report.verdict) {
        (Some(_), v) => v,
        (None, _) => Verdict::Fail,
    };
    let witness = json!({
        "objects": g.category.num_objects(),
        "morphisms": g.category.num_morphisms(),
        "isomorphic_to_s3": iso.is_some(),
        "morphism_map": iso.map(|i| i.forward.morphism_map),
    });
    Ok(CheckReport { name: "semidirect".into(), verdict, witness, ..report })
}

/// For every object `c`, the fiber of the homotopy colimit over the vertex
/// `c` is isomorphic to `F(c)`.
pub fn verify_vertex_fiber(f: &SimplicialFunctor) -> Result<CheckReport, TheoremError> {
    f.validate()?;
    let top = f.values.iter().map(|v| v.top()).max().unwrap_or(0);
    let h = hocolim(f, top)?;
    let proj = h.projection();
    let mut failures = Vec::new();
    for c in 0..f.base.num_objects() {
        let fiber = vertex_fiber(&proj, h.sset(), &h.srep.nerve.sset, c as u32)?;
        if find_isomorphism(&fiber, &f.values[c], DEFAULT_ISO_BUDGET)?.is_none() {
            failures.push(c);
        }
    }
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(CheckReport::new("fiber", verdict).witness(json!({
        "objects": f.base.num_objects(),
        "value_counts": f.values.iter().map(|v| (0..=v.top()).map(|n| v.count(n)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "failures": failures,
    })))
}

pub fn fiber_instance(seed: u64, index: u64) -> Result<CheckReport, TheoremError> {
    let f = random_simplicial_functor(&mut instance_rng(seed, FIBER_SALT, index), 3, 3);
    Ok(verify_vertex_fiber(&f)?.param("seed", seed).param("instance", index))
}

/// Every comma category `(s ↓ J)` of the constant-string functor
/// `J: B_k(V) -> (A_k)_q B_k(V)` has an initial object, namely `U_q` with
/// its structure map.
pub fn verify_homotopy_terminal_j(bundle: &PosetBundle, q: usize, v: &OpenSetRep) -> Result<CheckReport, TheoremError> {
    let (strings, base, j) = build_akq_bk(bundle, q, v)?;
    let r = bundle.restrict_to(v);
    let mut missing = Vec::new();
    let mut wrong = Vec::new();
    for s in 0..strings.len() {
        let comma = comma_category(&j, &base, &strings.category, s)?;
        match comma.category.has_initial() {
            None => missing.push(strings.category.label(s).to_string()),
            Some(i) => {
                let (c, _) = comma.objects[i];
                if r.root_id(c) != strings.strings[s][q] {
                    wrong.push(strings.category.label(s).to_string());
                }
            }
        }
    }
    let verdict = if !wrong.is_empty() {
        Verdict::Fail
    } else if !missing.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(CheckReport::new("terminal-j", verdict)
        .param("model", bundle.model.to_string())
        .param("k", bundle.k)
        .param("q", q)
        .param("region", v.to_string())
        .witness(json!({
            "strings": strings.len(),
            "base_objects": base.num_objects(),
            "without_initial": missing,
            "initial_not_last": wrong,
        }))
        .note(ISOTOPY_NOTE))
}

/// Builds `A_k(B_k)_p(V)` and the Grothendieck construction of
/// `W ↦ A_k(B_k)_{p-1}(W)` over `A_k(V)`, and validates the isomorphism
/// `(V_0 .. V_p) ↦ (V_p, (V_0 .. V_{p-1}))`.
pub fn verify_grothendieck_decomposition(
    bundle: &PosetBundle,
    p: usize,
    v: &OpenSetRep,
) -> Result<CheckReport, TheoremError> {
    if p == 0 {
        return Err(TheoremError::Unsupported("decomposition needs p >= 1".into()));
    }
    let left = build_ak_bkp(bundle, p, v);
    let r = bundle.restrict_to(v);
    let base = r.a_category()?;
    let values: Vec<_> = r.objects.iter().map(|w| build_ak_bkp(bundle, p - 1, w)).collect();
    let mut actions = Vec::with_capacity(base.num_morphisms());
    for m in 0..base.num_morphisms() {
        let (from, to) = (&values[base.source(m)], &values[base.target(m)]);
        let object_map: Vec<usize> = from
            .strings
            .iter()
            .map(|s| to.find(s).expect("strings in a smaller region survive"))
            .collect();
        let morphism_map = (0..from.category.num_morphisms())
            .map(|g| {
                let (a, b) = (object_map[from.category.source(g)], object_map[from.category.target(g)]);
                to.category.hom(a, b).next().expect("inclusion preserves the order")
            })
            .collect();
        actions.push(CatFunctor::new(object_map, morphism_map));
    }
    let f = CatValuedFunctor { base, values: values.iter().map(|s| s.category.clone()).collect(), actions };
    f.validate()?;
    let g = grothendieck(&f)?;
    let base_of_root: HashMap<usize, usize> = (0..r.len()).map(|i| (r.root_id(i), i)).collect();
    let hint: Vec<usize> = left
        .strings
        .iter()
        .map(|s| {
            let c = base_of_root[&s[p]];
            let x = values[c].find(&s[..p]).expect("prefix lies in the last open set");
            g.object_index(c, x).expect("object of the construction")
        })
        .collect();
    let iso = categories_isomorphic(&left.category, &g.category, Some(&hint), DEFAULT_ISO_BUDGET)?;
    let verdict = if iso.is_some() { Verdict::Pass } else { Verdict::Fail };
    Ok(CheckReport::new("decomposition", verdict)
        .param("model", bundle.model.to_string())
        .param("k", bundle.k)
        .param("p", p)
        .param("region", v.to_string())
        .witness(json!({
            "left_objects": left.category.num_objects(),
            "left_morphisms": left.category.num_morphisms(),
            "right_objects": g.category.num_objects(),
            "right_morphisms": g.category.num_morphisms(),
        }))
        .note(ISOTOPY_NOTE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{build_bk, enumerate_balls, ManifoldModel};
    use crate::sset::SimplicialSet;

    fn bundle(model: ManifoldModel, k: usize) -> PosetBundle {
        build_bk(&model, &enumerate_balls(&model), k).unwrap()
    }

    #[test]
    fn thomason_trivial_cases() {
        let e = Engine::default();
        let terminal = CatValuedFunctor::constant(FinCategory::terminal(), FinCategory::cyclic_group(2));
        let r = verify_thomason(&e, &terminal, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.left.unwrap().to_string(), "H0 = Z, H1 = Z/2, H2 = 0");
        let base = FinCategory::thin(vec!["a".into(), "b".into(), "c".into()], vec![(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]).unwrap();
        let r = verify_thomason(&e, &CatValuedFunctor::constant(base, FinCategory::terminal()), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.left.unwrap().betti, vec![1, 0, 0]);
    }

    #[test]
    fn thomason_random_batch() {
        let e = Engine::default();
        for i in 0..10 {
            let r = thomason_instance(&e, 7, i, 2).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
        }
    }

    #[test]
    fn semidirect_is_s3() {
        let r = verify_semidirect(&Engine::default(), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.witness["isomorphic_to_s3"], true);
        // the abelianization of S3 is Z/2
        assert_eq!(r.left.unwrap().to_string(), "H0 = Z, H1 = Z/2");
    }

    #[test]
    fn fibers() {
        let point = SimplicialFunctor::constant(FinCategory::thin(vec!["a".into(), "b".into()], vec![(0, 0), (1, 1), (0, 1)]).unwrap(), SimplicialSet::point());
        assert_eq!(verify_vertex_fiber(&point).unwrap().verdict, Verdict::Pass);
        let circle = SimplicialFunctor::constant(FinCategory::terminal(), SimplicialSet::boundary_of_simplex(2));
        assert_eq!(verify_vertex_fiber(&circle).unwrap().verdict, Verdict::Pass);
        for i in 0..10 {
            let r = fiber_instance(5, i).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
        }
    }

    #[test]
    fn terminal_j() {
        let m = ManifoldModel::Interval(3);
        for q in 0..=1 {
            let r = verify_homotopy_terminal_j(&bundle(m, 1), q, &OpenSetRep::whole(&m)).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
        }
    }

    #[test]
    fn decomposition() {
        let m = ManifoldModel::Interval(3);
        let r = verify_grothendieck_decomposition(&bundle(m, 1), 1, &OpenSetRep::whole(&m)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
        assert_eq!(r.witness["left_objects"], 22);
        let r = verify_grothendieck_decomposition(&bundle(m, 0), 2, &OpenSetRep::whole(&m)).unwrap();
        assert_eq!((r.verdict, r.witness["right_objects"].as_u64()), (Verdict::Pass, Some(1)));
    }
}
