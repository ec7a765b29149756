use std::collections::HashMap;

use crate::fincat::{CatFunctor, FinCategory, FinPoset};

use super::{ManifoldError, OpenSetRep, PosetBundle};

/// A category whose objects are strings `U_0 <= ... <= U_p` of bundle objects.
///
/// Strings are stored as ids of the unrestricted bundle so that string
/// categories over different regions can be compared directly.
#[derive(Clone, Debug)]
pub struct StringCategory {
    pub category: FinCategory,
    pub strings: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl StringCategory {
    pub fn find(&self, string: &[usize]) -> Option<usize> {
        self.index.get(string).copied()
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }
}

/// Strings of length `p + 1` in `objects`, with a morphism `s -> t` whenever
/// `s_i <= t_i` in `arrows` for every `i`.
fn string_category(bundle: &PosetBundle, objects: &FinPoset, arrows: &FinPoset, p: usize) -> StringCategory {
    let n = bundle.len();
    let mut local: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::with_capacity(p + 1);
    for start in 0..n {
        cur.push(start);
        chains(objects, p, &mut cur, &mut local);
        cur.pop();
    }
    let index_local: HashMap<Vec<usize>, usize> = local.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut edges = Vec::new();
    let mut target = Vec::with_capacity(p + 1);
    for (i, s) in local.iter().enumerate() {
        moves(objects, arrows, s, &mut target, &mut |t| edges.push((i, index_local[t])));
    }
    let strings: Vec<Vec<usize>> = local.iter().map(|s| s.iter().map(|&x| bundle.root_id(x)).collect()).collect();
    let labels = local
        .iter()
        .map(|s| s.iter().map(|&x| bundle.b.labels()[x].as_str()).collect::<Vec<_>>().join(" < "))
        .collect();
    let category = FinCategory::thin(labels, edges).expect("componentwise order is thin");
    let index = strings.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    StringCategory { category, strings, index }
}

fn chains(order: &FinPoset, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == p + 1 {
        out.push(cur.clone());
        return;
    }
    let last = *cur.last().expect("nonempty");
    for &next in order.up_set(last) {
        cur.push(next);
        chains(order, p, cur, out);
        cur.pop();
    }
}

fn moves(objects: &FinPoset, arrows: &FinPoset, s: &[usize], t: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    let i = t.len();
    if i == s.len() {
        emit(t);
        return;
    }
    for &x in arrows.up_set(s[i]) {
        if i == 0 || objects.leq(t[i - 1], x) {
            t.push(x);
            moves(objects, arrows, s, t, emit);
            t.pop();
        }
    }
}

/// `A_k(B_k)_p(V)`: strings of `p` composable `B_k(V)` morphisms, with natural
/// transformations whose components lie in `A_k`.
pub fn build_ak_bkp(bundle: &PosetBundle, p: usize, v: &OpenSetRep) -> StringCategory {
    let r = bundle.restrict_to(v);
    string_category(&r, &r.b, &r.a, p)
}

/// `(A_k)_q B_k(V)`: strings of `q` composable `A_k(V)` morphisms, with natural
/// transformations whose components lie in `B_k`, together with the functor
/// `J: B_k(V) -> (A_k)_q B_k(V)` sending `U` to the constant string. The
/// source category of `J` is `B_k(V)` with objects in restricted order.
pub fn build_akq_bk(
    bundle: &PosetBundle,
    q: usize,
    v: &OpenSetRep,
) -> Result<(StringCategory, FinCategory, CatFunctor), ManifoldError> {
    let r = bundle.restrict_to(v);
    let strings = string_category(&r, &r.a, &r.b, q);
    let base = r.b_category();
    let object_map: Vec<usize> = (0..r.len())
        .map(|u| strings.find(&vec![r.root_id(u); q + 1]).expect("constant strings exist"))
        .collect();
    let morphism_map = (0..base.num_morphisms())
        .map(|m| {
            let (s, t) = (object_map[base.source(m)], object_map[base.target(m)]);
            strings.category.hom(s, t).next().expect("constant strings are componentwise comparable")
        })
        .collect();
    let j = CatFunctor::new(object_map, morphism_map);
    j.validate(&base, &strings.category)?;
    Ok((strings, base, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{build_bk, enumerate_balls, ManifoldModel};

    fn full(model: ManifoldModel, k: usize) -> PosetBundle {
        build_bk(&model, &enumerate_balls(&model), k).unwrap()
    }

    #[test]
    fn p0_is_a_k() {
        let m = ManifoldModel::Cycle(5);
        let bundle = full(m, 2);
        let s = build_ak_bkp(&bundle, 0, &OpenSetRep::whole(&m));
        assert_eq!(s.len(), bundle.len());
        assert_eq!(s.category.num_morphisms(), bundle.a.relation_size());
    }

    #[test]
    fn k0_is_one_object() {
        let m = ManifoldModel::Interval(4);
        let bundle = full(m, 0);
        for p in 0..3 {
            let s = build_ak_bkp(&bundle, p, &OpenSetRep::whole(&m));
            assert_eq!((s.len(), s.category.num_morphisms()), (1, 1));
            let (t, _, _) = build_akq_bk(&bundle, p, &OpenSetRep::whole(&m)).unwrap();
            assert_eq!(t.len(), 1);
        }
    }

    #[test]
    fn p1_objects_are_comparable_pairs() {
        let m = ManifoldModel::Interval(3);
        let bundle = full(m, 1);
        let s = build_ak_bkp(&bundle, 1, &OpenSetRep::whole(&m));
        assert_eq!(s.len(), bundle.b.relation_size());
        assert_eq!(s.len(), 22);
        assert!(s.category.validate().is_ok());
    }

    #[test]
    fn j_is_identity_for_q0() {
        let m = ManifoldModel::Interval(3);
        let bundle = full(m, 1);
        let (s, base, j) = build_akq_bk(&bundle, 0, &OpenSetRep::whole(&m)).unwrap();
        assert_eq!(s.category.num_morphisms(), base.num_morphisms());
        assert!(j.object_map.iter().enumerate().all(|(i, &o)| i == o));
    }
}
