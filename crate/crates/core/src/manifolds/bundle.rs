use std::collections::{BTreeSet, HashMap};

use crate::fincat::{FinCategory, FinPoset};

use super::{is_isotopy_equiv, validate_basis, Ball, ManifoldError, ManifoldModel, OpenSetRep};

/// The special open sets `B_k` (unions of at most `k` pairwise separated
/// family balls, ordered by inclusion) with the wide subposet `A_k` of
/// isotopy-equivalence inclusions, possibly restricted to a region.
#[derive(Clone, Debug)]
pub struct PosetBundle {
    pub model: ManifoldModel,
    pub k: usize,
    pub family: Vec<Ball>,
    pub region: OpenSetRep,
    pub objects: Vec<OpenSetRep>,
    pub b: FinPoset,
    pub a: FinPoset,
    root_ids: Vec<usize>,
    index: HashMap<Vec<u32>, usize>,
}

impl PosetBundle {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Object with exactly this point set.
    pub fn find(&self, points: &[u32]) -> Option<usize> {
        self.index.get(points).copied()
    }

    /// Id of object `i` in the unrestricted bundle this one came from.
    pub fn root_id(&self, i: usize) -> usize {
        self.root_ids[i]
    }

    pub fn b_category(&self) -> FinCategory {
        self.b.to_category()
    }

    /// `A_k` as the wide subcategory of `B_k` on isotopy equivalences.
    pub fn a_category(&self) -> Result<FinCategory, ManifoldError> {
        let b = self.b_category();
        let keep: Vec<bool> = (0..b.num_morphisms()).map(|m| self.a.leq(b.source(m), b.target(m))).collect();
        Ok(b.wide_subcategory(|m| keep[m])?)
    }

    /// Full subposets on the objects contained in `v`.
    pub fn restrict_to(&self, v: &OpenSetRep) -> PosetBundle {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| self.objects[i].is_subset_of(v)).collect();
        let objects: Vec<OpenSetRep> = kept.iter().map(|&i| self.objects[i].clone()).collect();
        let labels: Vec<String> = kept.iter().map(|&i| self.b.labels()[i].clone()).collect();
        let b = FinPoset::from_leq(labels.clone(), |x, y| self.b.leq(kept[x], kept[y])).expect("restriction of a poset");
        let a = FinPoset::from_leq(labels, |x, y| self.a.leq(kept[x], kept[y])).expect("restriction of a poset");
        let index = objects.iter().enumerate().map(|(i, o)| (o.points().to_vec(), i)).collect();
        PosetBundle {
            model: self.model,
            k: self.k,
            family: self.family.clone(),
            region: v.clone(),
            objects,
            b,
            a,
            root_ids: kept.iter().map(|&i| self.root_ids[i]).collect(),
            index,
        }
    }
}

/// Builds `B_k` and `A_k` over the whole model from a ball family.
pub fn build_bk(model: &ManifoldModel, family: &[Ball], k: usize) -> Result<PosetBundle, ManifoldError> {
    model.validate()?;
    if !validate_basis(model, family) {
        return Err(ManifoldError::NotABasis);
    }
    let n = family.len();
    let sep: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| model.separated(family[i].points(), family[j].points())).collect())
        .collect();
    let mut sets: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    sets.insert((0, Vec::new()));
    let mut chosen = Vec::with_capacity(k);
    extend(family, &sep, k, 0, &mut chosen, &mut sets);

    let objects: Vec<OpenSetRep> = sets.into_iter().map(|(_, pts)| OpenSetRep::new(model, pts)).collect();
    let labels: Vec<String> = objects.iter().map(OpenSetRep::to_string).collect();
    let b = FinPoset::from_leq(labels.clone(), |x, y| objects[x].is_subset_of(&objects[y]))?;
    let a = FinPoset::from_leq(labels, |x, y| {
        objects[x].is_subset_of(&objects[y]) && is_isotopy_equiv(&objects[x], &objects[y]).unwrap_or(false)
    })?;
    let index = objects.iter().enumerate().map(|(i, o)| (o.points().to_vec(), i)).collect();
    Ok(PosetBundle {
        model: *model,
        k,
        family: family.to_vec(),
        region: OpenSetRep::whole(model),
        root_ids: (0..objects.len()).collect(),
        objects,
        b,
        a,
        index,
    })
}

fn extend(
    family: &[Ball],
    sep: &[Vec<bool>],
    k: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    sets: &mut BTreeSet<(usize, Vec<u32>)>,
) {
    if chosen.len() == k {
        return;
    }
    for i in from..family.len() {
        if chosen.iter().all(|&c| sep[c][i]) {
            chosen.push(i);
            let mut pts: Vec<u32> = chosen.iter().flat_map(|&c| family[c].points().iter().copied()).collect();
            pts.sort_unstable();
            sets.insert((pts.len(), pts));
            extend(family, sep, k, i + 1, chosen, sets);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::enumerate_balls;

    fn full(model: ManifoldModel, k: usize) -> PosetBundle {
        build_bk(&model, &enumerate_balls(&model), k).unwrap()
    }

    #[test]
    fn object_counts() {
        assert_eq!(full(ManifoldModel::Interval(3), 1).len(), 7);
        assert_eq!(full(ManifoldModel::Cycle(6), 0).len(), 1);
        // 12 arcs, the empty set, and separated pairs of arcs: two opposite
        // single vertices, in two ways
        assert_eq!(full(ManifoldModel::Cycle(4), 2).len(), 12 + 1 + 2);
        assert_eq!(full(ManifoldModel::Cycle(8), 2).len(), 197);
    }

    #[test]
    fn pairs_are_deduplicated_extensionally() {
        let m = ManifoldModel::Cycle(6);
        let balls = enumerate_balls(&m);
        let bundle = full(m, 2);
        let mut expected = BTreeSet::new();
        for (i, x) in balls.iter().enumerate() {
            expected.insert(x.points().to_vec());
            for y in &balls[i + 1..] {
                if m.separated(x.points(), y.points()) {
                    let mut p = [x.points(), y.points()].concat();
                    p.sort_unstable();
                    expected.insert(p);
                }
            }
        }
        assert_eq!(bundle.len(), expected.len() + 1);
    }

    #[test]
    fn a_is_wide_and_splits_by_component_count() {
        let bundle = full(ManifoldModel::Cycle(6), 2);
        for (x, y) in bundle.a.relation() {
            assert!(bundle.b.leq(x, y));
            assert_eq!(bundle.objects[x].num_components(), bundle.objects[y].num_components());
        }
        for o in &bundle.objects {
            assert!(o.num_components() <= 2);
            for c in o.components() {
                assert!(bundle.family.iter().any(|b| b.points() == c.as_slice()));
            }
        }
        let a = bundle.a_category().unwrap();
        assert_eq!(a.num_morphisms(), bundle.a.relation_size());
        assert!(a.validate().is_ok());
    }

    #[test]
    fn restriction() {
        let m = ManifoldModel::Interval(3);
        let bundle = full(m, 1);
        let r = bundle.restrict_to(&OpenSetRep::new(&m, vec![0, 1]));
        assert_eq!(r.len(), 4);
        assert_eq!(bundle.restrict_to(&OpenSetRep::empty()).len(), 1);
        assert_eq!(bundle.restrict_to(&OpenSetRep::whole(&m)).len(), bundle.len());
        for i in 0..r.len() {
            assert_eq!(bundle.objects[r.root_id(i)], r.objects[i]);
        }
    }

    #[test]
    fn not_a_basis() {
        let m = ManifoldModel::Interval(4);
        let family: Vec<Ball> = enumerate_balls(&m).into_iter().filter(|b| b.points().len() > 1).collect();
        assert!(matches!(build_bk(&m, &family, 1), Err(ManifoldError::NotABasis)));
    }
}
