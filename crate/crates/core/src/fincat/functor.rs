use super::{FinCatError, FinCategory, MorId, ObjId};

/// A functor between finite categories, stored as its object and morphism
/// maps. Source and target categories are passed explicitly wherever the
/// functor is checked or applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub object_map: Vec<ObjId>,
    pub morphism_map: Vec<MorId>,
}

impl CatFunctor {
    pub fn new(object_map: Vec<ObjId>, morphism_map: Vec<MorId>) -> Self {
        Self { object_map, morphism_map }
    }

    pub fn identity(cat: &FinCategory) -> Self {
        Self::new((0..cat.num_objects()).collect(), (0..cat.num_morphisms()).collect())
    }

    pub fn on_object(&self, o: ObjId) -> ObjId {
        self.object_map[o]
    }

    pub fn on_morphism(&self, m: MorId) -> MorId {
        self.morphism_map[m]
    }

    /// `other . self`.
    pub fn then(&self, other: &CatFunctor) -> CatFunctor {
        CatFunctor::new(
            self.object_map.iter().map(|&o| other.object_map[o]).collect(),
            self.morphism_map.iter().map(|&m| other.morphism_map[m]).collect(),
        )
    }

    /// Checks identities, endpoints and composition by exhaustive enumeration.
    pub fn validate(&self, source: &FinCategory, target: &FinCategory) -> Result<(), FinCatError> {
        let bad = |what: String| Err(FinCatError::NotAFunctor(what));
        if self.object_map.len() != source.num_objects() || self.morphism_map.len() != source.num_morphisms() {
            return bad("map sizes do not match the source category".into());
        }
        if let Some(&o) = self.object_map.iter().find(|&&o| o >= target.num_objects()) {
            return bad(format!("object image {o} outside target"));
        }
        if let Some(&m) = self.morphism_map.iter().find(|&&m| m >= target.num_morphisms()) {
            return bad(format!("morphism image {m} outside target"));
        }
        for m in 0..source.num_morphisms() {
            let fm = self.morphism_map[m];
            if target.source(fm) != self.object_map[source.source(m)]
                || target.target(fm) != self.object_map[source.target(m)]
            {
                return bad(format!("morphism {m} is sent to a morphism with wrong endpoints"));
            }
        }
        for o in 0..source.num_objects() {
            if self.morphism_map[source.identity(o)] != target.identity(self.object_map[o]) {
                return bad(format!("identity of object {o} not preserved"));
            }
        }
        for (g, f) in source.composable_pairs() {
            let gf = source.comp(g, f);
            if target.compose(self.morphism_map[g], self.morphism_map[f]) != Some(self.morphism_map[gf]) {
                return bad(format!("composite {g} . {f} not preserved"));
            }
        }
        Ok(())
    }
}

/// A strict functor from a finite category into finite categories.
#[derive(Clone, Debug)]
pub struct CatValuedFunctor {
    pub base: FinCategory,
    pub values: Vec<FinCategory>,
    /// One functor `values[source(m)] -> values[target(m)]` per base morphism.
    pub actions: Vec<CatFunctor>,
}

impl CatValuedFunctor {
    /// Checks each action, identities and composites.
    pub fn validate(&self) -> Result<(), FinCatError> {
        let base = &self.base;
        if self.values.len() != base.num_objects() || self.actions.len() != base.num_morphisms() {
            return Err(FinCatError::NotAFunctor("value or action count mismatch".into()));
        }
        for m in 0..base.num_morphisms() {
            self.actions[m].validate(&self.values[base.source(m)], &self.values[base.target(m)])?;
        }
        for o in 0..base.num_objects() {
            if self.actions[base.identity(o)] != CatFunctor::identity(&self.values[o]) {
                return Err(FinCatError::NotAFunctor(format!("identity of {o} is not sent to an identity")));
            }
        }
        for (g, f) in base.composable_pairs() {
            let gf = base.comp(g, f);
            if self.actions[f].then(&self.actions[g]) != self.actions[gf] {
                return Err(FinCatError::NotAFunctor(format!("composite {g} . {f} not preserved")));
            }
        }
        Ok(())
    }

    /// The functor constant at `value` (every morphism acts by the identity).
    pub fn constant(base: FinCategory, value: FinCategory) -> Self {
        let id = CatFunctor::identity(&value);
        Self {
            values: vec![value; base.num_objects()],
            actions: vec![id; base.num_morphisms()],
            base,
        }
    }
}
