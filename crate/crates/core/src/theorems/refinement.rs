use petgraph::unionfind::UnionFind;
use serde_json::json;

use crate::fincat::FinCategory;
use crate::homology::Engine;
use crate::manifolds::{build_ak_bkp, build_bk, enumerate_balls, Ball, ManifoldError, ManifoldModel, OpenSetRep, PosetBundle};
use crate::sset::{limit_discrete, nerve, SetFunctor};

use super::{CheckReport, TheoremError, Verdict, ISOTOPY_NOTE};

fn components(cat: &FinCategory) -> usize {
    let mut uf = UnionFind::<usize>::new(cat.num_objects());
    for m in 0..cat.num_morphisms() {
        uf.union(cat.source(m), cat.target(m));
    }
    let mut roots = uf.into_labeling();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Compares the nerves of `A'_k(B'_k)_p(V)` built from `subfamily` and
/// `A_k(B_k)_p(V)` built from all balls.
pub fn verify_refinement(
    engine: &Engine,
    model: &ManifoldModel,
    k: usize,
    p: usize,
    v: &OpenSetRep,
    subfamily: &[Ball],
    through: usize,
) -> Result<CheckReport, TheoremError> {
    let full_family = enumerate_balls(model);
    if subfamily.iter().any(|b| !full_family.contains(b)) {
        return Err(TheoremError::SubfamilyNotBasis);
    }
    let sub = match build_bk(model, subfamily, k) {
        Err(ManifoldError::NotABasis) => return Err(TheoremError::SubfamilyNotBasis),
        other => other?,
    };
    let full = build_bk(model, &full_family, k)?;
    let primed = build_ak_bkp(&sub, p, v);
    let unprimed = build_ak_bkp(&full, p, v);
    let left = engine.homology(&nerve(&primed.category, through + 1).sset, through)?;
    let right = engine.homology(&nerve(&unprimed.category, through + 1).sset, through)?;
    let pi0 = (components(&primed.category), components(&unprimed.category));
    let mut report = CheckReport::new("refinement", Verdict::Fail)
        .param("model", model.to_string())
        .param("k", k)
        .param("p", p)
        .param("region", v.to_string())
        .param("subfamily_size", subfamily.len())
        .param("max_degree", through)
        .witness(json!({
            "primed_objects": primed.len(),
            "unprimed_objects": unprimed.len(),
            "pi0": [pi0.0, pi0.1],
        }))
        .note(ISOTOPY_NOTE)
        .compare(left, right, through);
    if pi0.0 != pi0.1 {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// The cofunctor `U ↦ {colorings of the components of U}` on `B_k`, with
/// restriction along inclusions. A coloring is encoded in base `colors`, one
/// digit per component in order.
pub fn component_labelings(bundle: &PosetBundle, colors: usize) -> SetFunctor {
    let op = bundle.b_category().opposite();
    let sizes = bundle.objects.iter().map(|u| colors.pow(u.num_components() as u32)).collect();
    let maps = (0..op.num_morphisms())
        .map(|m| {
            let (big, small) = (&bundle.objects[op.source(m)], &bundle.objects[op.target(m)]);
            let parent: Vec<usize> = small
                .components()
                .iter()
                .map(|c| big.components().iter().position(|b| b.contains(&c[0])).expect("inclusion"))
                .collect();
            (0..colors.pow(big.num_components() as u32))
                .map(|x| {
                    let digit = |i: usize| x / colors.pow(i as u32) % colors;
                    parent.iter().enumerate().map(|(j, &i)| digit(i) * colors.pow(j as u32)).sum()
                })
                .collect()
        })
        .collect();
    SetFunctor { sizes, maps }
}

/// The limit of a set-valued cofunctor on `B_k` over `B_k(V)`: matching
/// families, one element per object contained in `V`, listed in the order of
/// the restricted objects.
pub fn kan_extend_discrete(bundle: &PosetBundle, f: &SetFunctor, v: &OpenSetRep) -> Result<Vec<Vec<usize>>, TheoremError> {
    let op = bundle.b_category().opposite();
    f.validate(&op)?;
    let r = bundle.restrict_to(v);
    let rop = r.b_category().opposite();
    let ids: Vec<usize> = r.objects.iter().map(|u| bundle.find(u.points()).expect("restricted object")).collect();
    let restricted = SetFunctor {
        sizes: ids.iter().map(|&i| f.sizes[i]).collect(),
        maps: (0..rop.num_morphisms())
            .map(|m| {
                let full = op.hom(ids[rop.source(m)], ids[rop.target(m)]).next().expect("restriction of a poset");
                f.maps[full].clone()
            })
            .collect(),
    };
    Ok(limit_discrete(&rop, &restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{family_from_spec, stride_family};

    #[test]
    fn full_subfamily_is_trivial() {
        let m = ManifoldModel::Cycle(5);
        let r = verify_refinement(&Engine::default(), &m, 1, 1, &OpenSetRep::whole(&m), &enumerate_balls(&m), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn stride_on_cycle() {
        let m = ManifoldModel::Cycle(8);
        let sub = stride_family(&m, 2).unwrap();
        let r = verify_refinement(&Engine::default(), &m, 1, 0, &OpenSetRep::whole(&m), &sub, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.left.unwrap().betti, vec![2, 1]);
    }

    #[test]
    fn stride_on_interval_p1() {
        let m = ManifoldModel::Interval(6);
        let sub = family_from_spec(&m, "stride:2").unwrap();
        let r = verify_refinement(&Engine::default(), &m, 2, 1, &OpenSetRep::whole(&m), &sub, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
    }

    #[test]
    fn rejects_non_basis() {
        let m = ManifoldModel::Interval(4);
        let sub: Vec<Ball> = enumerate_balls(&m).into_iter().filter(|b| b.points().len() > 1).collect();
        let r = verify_refinement(&Engine::default(), &m, 1, 0, &OpenSetRep::whole(&m), &sub, 1);
        assert!(matches!(r, Err(TheoremError::SubfamilyNotBasis)));
    }

    fn brute_force_limit(bundle: &PosetBundle, f: &SetFunctor) -> usize {
        let op = bundle.b_category().opposite();
        let n = bundle.len();
        let total: usize = f.sizes.iter().product();
        (0..total)
            .filter(|&code| {
                let mut rest = code;
                let family: Vec<usize> = (0..n)
                    .map(|i| {
                        let x = rest % f.sizes[i];
                        rest /= f.sizes[i];
                        x
                    })
                    .collect();
                (0..op.num_morphisms()).all(|m| f.maps[m][family[op.source(m)]] == family[op.target(m)])
            })
            .count()
    }

    #[test]
    fn labelings_on_interval() {
        let m = ManifoldModel::Interval(3);
        let bundle = build_bk(&m, &enumerate_balls(&m), 1).unwrap();
        let f = component_labelings(&bundle, 2);
        f.validate(&bundle.b_category().opposite()).unwrap();
        let whole = OpenSetRep::whole(&m);
        let limit = kan_extend_discrete(&bundle, &f, &whole).unwrap();
        assert_eq!(limit.len(), brute_force_limit(&bundle, &f));
        // the whole model is the maximum, so the limit is its value
        assert_eq!(limit.len(), f.sizes[bundle.find(whole.points()).unwrap()]);
        assert_eq!(kan_extend_discrete(&bundle, &f, &OpenSetRep::empty()).unwrap().len(), 1);
    }

    #[test]
    fn constant_functor_on_connected_region() {
        let m = ManifoldModel::Cycle(5);
        let bundle = build_bk(&m, &enumerate_balls(&m), 2).unwrap();
        let f = SetFunctor::constant(&bundle.b_category().opposite(), 3);
        let v = OpenSetRep::parse(&m, "0..2").unwrap();
        assert_eq!(kan_extend_discrete(&bundle, &f, &v).unwrap().len(), 3);
    }
}
