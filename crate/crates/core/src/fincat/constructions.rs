use std::collections::HashMap;

use super::{CatFunctor, CatValuedFunctor, FinCatError, FinCategory, MorId, ObjId};

/// The comma category `(d ↓ J)` together with the pair each object stands for.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: FinCategory,
    /// Object `i` is the pair `(c, u: d -> J(c))`.
    pub objects: Vec<(ObjId, MorId)>,
}

/// Objects are pairs `(c, u: d -> J(c))`; a morphism `(c, u) -> (c', u')` is a
/// morphism `h: c -> c'` of the source with `J(h) . u = u'`.
pub fn comma_category(
    functor: &CatFunctor,
    source: &FinCategory,
    target: &FinCategory,
    d: ObjId,
) -> Result<CommaCategory, FinCatError> {
    if d >= target.num_objects() {
        return Err(FinCatError::Malformed(format!("object {d} not in the target category")));
    }
    let mut objects = Vec::new();
    for c in 0..source.num_objects() {
        for u in target.hom(d, functor.on_object(c)) {
            objects.push((c, u));
        }
    }
    let index: HashMap<(ObjId, MorId), usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let mut morphisms = Vec::new();
    let mut carried = Vec::new();
    let mut mor_index: HashMap<(usize, MorId), usize> = HashMap::new();
    let mut identities = vec![0; objects.len()];
    for (i, &(c, u)) in objects.iter().enumerate() {
        for &h in source.out_morphisms(c) {
            let u2 = target
                .compose(functor.on_morphism(h), u)
                .ok_or_else(|| FinCatError::Malformed("target category is not closed under composition".into()))?;
            let j = index[&(source.target(h), u2)];
            mor_index.insert((i, h), morphisms.len());
            if h == source.identity(c) {
                identities[i] = morphisms.len();
            }
            morphisms.push((i, j));
            carried.push(h);
        }
    }
    let labels = objects
        .iter()
        .map(|&(c, u)| format!("({}, {u})", source.label(c)))
        .collect();
    let category = FinCategory::from_compose_fn(labels, morphisms.clone(), identities, |g, f| {
        let h = source.comp(carried[g], carried[f]);
        mor_index[&(morphisms[f].0, h)]
    })?;
    Ok(CommaCategory { category, objects })
}

/// The Grothendieck construction with its projection to the base.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: FinCategory,
    pub projection: CatFunctor,
    /// Object `i` is the pair `(c, x)` with `x` an object of `F(c)`.
    pub objects: Vec<(ObjId, ObjId)>,
    /// Morphism `i` is `(f, g)` out of the object with source coordinate `x`,
    /// stored as `(f, x, g)`.
    pub morphisms: Vec<(MorId, ObjId, MorId)>,
}

impl Grothendieck {
    pub fn object_index(&self, c: ObjId, x: ObjId) -> Option<ObjId> {
        self.objects.iter().position(|&p| p == (c, x))
    }
}

/// Objects `(c, x)`, morphisms `(f, g): (c, x) -> (c', x')` with `f: c -> c'`
/// and `g: F(f)(x) -> x'`, composed as `(f', g') . (f, g) = (f' . f, g' . F(f')(g))`.
pub fn grothendieck(functor: &CatValuedFunctor) -> Result<Grothendieck, FinCatError> {
    let base = &functor.base;
    let mut objects = Vec::new();
    let mut obj_start = Vec::with_capacity(base.num_objects());
    for c in 0..base.num_objects() {
        obj_start.push(objects.len());
        for x in 0..functor.values[c].num_objects() {
            objects.push((c, x));
        }
    }
    let obj_id = |c: ObjId, x: ObjId| obj_start[c] + x;

    let mut morphisms = Vec::new();
    let mut endpoints = Vec::new();
    let mut index: HashMap<(MorId, ObjId, MorId), usize> = HashMap::new();
    for f in 0..base.num_morphisms() {
        let (c, c2) = (base.source(f), base.target(f));
        let action = &functor.actions[f];
        let value = &functor.values[c2];
        for x in 0..functor.values[c].num_objects() {
            let y = action.on_object(x);
            for &g in value.out_morphisms(y) {
                index.insert((f, x, g), morphisms.len());
                morphisms.push((f, x, g));
                endpoints.push((obj_id(c, x), obj_id(c2, value.target(g))));
            }
        }
    }
    let identities = objects
        .iter()
        .map(|&(c, x)| index[&(base.identity(c), x, functor.values[c].identity(x))])
        .collect();
    let labels = objects
        .iter()
        .map(|&(c, x)| format!("({}, {})", base.label(c), functor.values[c].label(x)))
        .collect();
    let category = FinCategory::from_compose_fn(labels, endpoints, identities, |second, first| {
        let (f, x, g) = morphisms[first];
        let (f2, _, g2) = morphisms[second];
        let c3 = base.target(f2);
        let moved = functor.actions[f2].on_morphism(g);
        let g_total = functor.values[c3].comp(g2, moved);
        index[&(base.comp(f2, f), x, g_total)]
    })?;
    let projection = CatFunctor::new(
        objects.iter().map(|&(c, _)| c).collect(),
        morphisms.iter().map(|&(f, _, _)| f).collect(),
    );
    Ok(Grothendieck { category, projection, objects, morphisms })
}

/// The strict fiber of the projection over `c`: objects `(c, x)` and morphisms
/// `(id_c, g)`.
pub fn grothendieck_fiber(g: &Grothendieck, base: &FinCategory, c: ObjId) -> FinCategory {
    let id = base.identity(c);
    let keep_obj: Vec<bool> = g.objects.iter().map(|&(cc, _)| cc == c).collect();
    let (full, _) = g.category.full_subcategory(|o| keep_obj[o]);
    // full subcategory keeps morphisms in identifier order; restrict to f = id_c
    let kept: Vec<MorId> = (0..g.category.num_morphisms())
        .filter(|&m| keep_obj[g.category.source(m)] && keep_obj[g.category.target(m)])
        .collect();
    full.wide_subcategory(|m| g.morphisms[kept[m]].0 == id)
        .expect("vertical morphisms form a subcategory")
}
