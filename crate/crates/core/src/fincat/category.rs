use std::collections::HashMap;
use std::fmt;

use super::FinCatError;

/// Object identifier inside one [`FinCategory`].
pub type ObjId = usize;
/// Morphism identifier inside one [`FinCategory`].
pub type MorId = usize;

/// Categories with fewer morphisms than this keep a dense composition table.
pub const DENSE_LIMIT: usize = 2048;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Composition {
    /// `table[g * n + f]` holds `g . f`.
    Dense { n: usize, table: Vec<u32> },
    Sparse(HashMap<(u32, u32), u32>),
    /// At most one morphism per hom-set: `g . f` is the morphism `src f -> tgt g`.
    Thin(HashMap<(u32, u32), u32>),
}

/// A finite category with an explicit composition table.
///
/// Morphisms carry stable integer identifiers. Composition is stored densely
/// for small categories, as a sparse map for larger ones, and implicitly
/// through hom-set lookup for thin categories (posets).
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    labels: Vec<String>,
    sources: Vec<ObjId>,
    targets: Vec<ObjId>,
    identities: Vec<MorId>,
    out: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    composition: Composition,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.labels.len())
            .field("morphisms", &self.sources.len())
            .finish()
    }
}

impl FinCategory {
    /// Assembles a category from raw parts without checking any law.
    ///
    /// `compose` lists triples `(g, f, g . f)`. Use
    /// [`validate`](Self::validate) to audit the result.
    pub fn from_parts(
        labels: Vec<String>,
        morphisms: Vec<(ObjId, ObjId)>,
        identities: Vec<MorId>,
        compose: impl IntoIterator<Item = (MorId, MorId, MorId)>,
    ) -> Result<Self, FinCatError> {
        let n_obj = labels.len();
        if identities.len() != n_obj {
            return Err(FinCatError::Malformed(format!(
                "{} identities for {} objects",
                identities.len(),
                n_obj
            )));
        }
        for (m, &(s, t)) in morphisms.iter().enumerate() {
            if s >= n_obj || t >= n_obj {
                return Err(FinCatError::Malformed(format!(
                    "morphism {m} has endpoint outside the object range"
                )));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= morphisms.len() || morphisms[id] != (o, o) {
                return Err(FinCatError::Malformed(format!(
                    "identity of object {o} is not an endomorphism of it"
                )));
            }
        }
        let n = morphisms.len();
        let composition = if n <= DENSE_LIMIT {
            let mut table = vec![NONE; n * n];
            for (g, f, h) in compose {
                check_index(g, n)?;
                check_index(f, n)?;
                check_index(h, n)?;
                table[g * n + f] = h as u32;
            }
            Composition::Dense { n, table }
        } else {
            let mut map = HashMap::new();
            for (g, f, h) in compose {
                check_index(g, n)?;
                check_index(f, n)?;
                check_index(h, n)?;
                map.insert((g as u32, f as u32), h as u32);
            }
            Composition::Sparse(map)
        };
        Ok(Self::assemble(labels, morphisms, identities, composition))
    }

    /// Builds a category whose composition is computed by `compose` for every
    /// composable pair. Thin categories skip the table entirely.
    pub fn from_compose_fn(
        labels: Vec<String>,
        morphisms: Vec<(ObjId, ObjId)>,
        identities: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Result<Self, FinCatError> {
        let mut homs: HashMap<(u32, u32), u32> = HashMap::with_capacity(morphisms.len());
        let mut thin = true;
        for (m, &(s, t)) in morphisms.iter().enumerate() {
            if homs.insert((s as u32, t as u32), m as u32).is_some() {
                thin = false;
            }
        }
        if thin {
            let cat = Self::from_parts(labels, morphisms, identities, std::iter::empty())?;
            return Ok(Self { composition: Composition::Thin(homs), ..cat });
        }
        let mut out: Vec<Vec<MorId>> = vec![Vec::new(); labels.len()];
        for (m, &(s, _)) in morphisms.iter().enumerate() {
            out[s].push(m);
        }
        let mut triples = Vec::new();
        for f in 0..morphisms.len() {
            for &g in &out[morphisms[f].1] {
                triples.push((g, f, compose(g, f)));
            }
        }
        Self::from_parts(labels, morphisms, identities, triples)
    }

    /// A thin category: one morphism per listed pair; identities are the
    /// morphisms `(o, o)`. Composition is the unique arrow when it exists.
    pub fn thin(labels: Vec<String>, arrows: Vec<(ObjId, ObjId)>) -> Result<Self, FinCatError> {
        let mut homs = HashMap::with_capacity(arrows.len());
        let mut identities = vec![usize::MAX; labels.len()];
        for (m, &(s, t)) in arrows.iter().enumerate() {
            if homs.insert((s as u32, t as u32), m as u32).is_some() {
                return Err(FinCatError::Malformed(format!("duplicate arrow {s} -> {t}")));
            }
            if s == t && s < identities.len() {
                identities[s] = m;
            }
        }
        if let Some(o) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(FinCatError::Malformed(format!("object {o} lacks an identity")));
        }
        let cat = Self::from_parts(labels, arrows, identities, std::iter::empty())?;
        Ok(Self { composition: Composition::Thin(homs), ..cat })
    }

    fn assemble(
        labels: Vec<String>,
        morphisms: Vec<(ObjId, ObjId)>,
        identities: Vec<MorId>,
        composition: Composition,
    ) -> Self {
        let n_obj = labels.len();
        let mut out = vec![Vec::new(); n_obj];
        let mut incoming = vec![Vec::new(); n_obj];
        let (sources, targets): (Vec<_>, Vec<_>) = morphisms.into_iter().unzip();
        for m in 0..sources.len() {
            out[sources[m]].push(m);
            incoming[targets[m]].push(m);
        }
        Self { labels, sources, targets, identities, out, incoming, composition }
    }

    pub fn empty() -> Self {
        Self::assemble(Vec::new(), Vec::new(), Vec::new(), Composition::Dense { n: 0, table: Vec::new() })
    }

    /// The one-object category of a finite group given by its multiplication
    /// table: `table[a][b] = a * b`, element 0 the unit.
    pub fn from_group_table(table: &[Vec<usize>]) -> Result<Self, FinCatError> {
        let n = table.len();
        let triples = (0..n).flat_map(|g| (0..n).map(move |f| (g, f, table[g][f])));
        Self::from_parts(vec!["*".into()], vec![(0, 0); n], vec![0], triples.collect::<Vec<_>>())
    }

    /// The cyclic group `Z/n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_group_table(&table).expect("cyclic group table is well formed")
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        Self::thin((0..n).map(|i| i.to_string()).collect(), (0..n).map(|i| (i, i)).collect())
            .expect("discrete category is well formed")
    }

    /// The terminal category.
    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn num_objects(&self) -> usize {
        self.labels.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.sources.len()
    }

    pub fn label(&self, o: ObjId) -> &str {
        &self.labels[o]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn source(&self, m: MorId) -> ObjId {
        self.sources[m]
    }

    pub fn target(&self, m: MorId) -> ObjId {
        self.targets[m]
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.sources[m]] == m
    }

    /// Morphisms with the given source, in identifier order.
    pub fn out_morphisms(&self, o: ObjId) -> &[MorId] {
        &self.out[o]
    }

    /// Morphisms with the given target, in identifier order.
    pub fn in_morphisms(&self, o: ObjId) -> &[MorId] {
        &self.incoming[o]
    }

    /// Morphisms `a -> b`.
    pub fn hom(&self, a: ObjId, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.out[a].iter().copied().filter(move |&m| self.targets[m] == b)
    }

    pub fn is_thin(&self) -> bool {
        match &self.composition {
            Composition::Thin(_) => true,
            _ => {
                let mut seen = std::collections::HashSet::new();
                (0..self.num_morphisms()).all(|m| seen.insert((self.sources[m], self.targets[m])))
            }
        }
    }

    /// `g . f`, or `None` when the pair is not composable or the table has
    /// no entry.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.targets[f] != self.sources[g] {
            return None;
        }
        match &self.composition {
            Composition::Dense { n, table } => {
                let h = table[g * n + f];
                (h != NONE).then_some(h as usize)
            }
            Composition::Sparse(map) => map.get(&(g as u32, f as u32)).map(|&h| h as usize),
            Composition::Thin(homs) => homs
                .get(&(self.sources[f] as u32, self.targets[g] as u32))
                .map(|&h| h as usize),
        }
    }

    /// Like [`compose`](Self::compose) for callers that already validated the category.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| panic!("morphisms {g} . {f} do not compose"))
    }

    /// Composable pairs `(g, f)` with `target(f) = source(g)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        (0..self.num_morphisms())
            .flat_map(move |f| self.out[self.targets[f]].iter().map(move |&g| (g, f)))
    }

    /// Lists every violated law. An empty report means the data is a category.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (g, f) in self.composable_pairs() {
            match self.compose(g, f) {
                None => violations.push(Violation::MissingComposite { g, f }),
                Some(h) => {
                    if self.sources[h] != self.sources[f] || self.targets[h] != self.targets[g] {
                        violations.push(Violation::WrongEndpoints { g, f, h });
                    }
                }
            }
        }
        for m in 0..self.num_morphisms() {
            let (s, t) = (self.sources[m], self.targets[m]);
            if self.compose(m, self.identities[s]) != Some(m) {
                violations.push(Violation::RightIdentity { f: m });
            }
            if self.compose(self.identities[t], m) != Some(m) {
                violations.push(Violation::LeftIdentity { f: m });
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.targets[f]] {
                let gf = self.comp(g, f);
                for &h in &self.out[self.targets[g]] {
                    let hg = self.comp(h, g);
                    if self.compose(h, gf) != self.compose(hg, f) {
                        violations.push(Violation::Associativity { h, g, f });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Sources and targets swapped, composition reversed.
    pub fn opposite(&self) -> Self {
        let composition = match &self.composition {
            Composition::Dense { n, table } => {
                let mut t = vec![NONE; n * n];
                for g in 0..*n {
                    for f in 0..*n {
                        t[f * n + g] = table[g * n + f];
                    }
                }
                Composition::Dense { n: *n, table: t }
            }
            Composition::Sparse(map) => {
                Composition::Sparse(map.iter().map(|(&(g, f), &h)| ((f, g), h)).collect())
            }
            Composition::Thin(homs) => {
                Composition::Thin(homs.iter().map(|(&(s, t), &m)| ((t, s), m)).collect())
            }
        };
        let morphisms = self.targets.iter().copied().zip(self.sources.iter().copied()).collect();
        Self::assemble(self.labels.clone(), morphisms, self.identities.clone(), composition)
    }

    /// Full subcategory on objects passing `keep`, with its inclusion functor.
    pub fn full_subcategory(&self, mut keep: impl FnMut(ObjId) -> bool) -> (Self, super::CatFunctor) {
        let kept: Vec<ObjId> = (0..self.num_objects()).filter(|&o| keep(o)).collect();
        let mut obj_index = vec![usize::MAX; self.num_objects()];
        for (i, &o) in kept.iter().enumerate() {
            obj_index[o] = i;
        }
        let mors: Vec<MorId> = (0..self.num_morphisms())
            .filter(|&m| obj_index[self.sources[m]] != usize::MAX && obj_index[self.targets[m]] != usize::MAX)
            .collect();
        self.restrict(&kept, &obj_index, &mors)
    }

    /// Same objects, only the morphisms passing `keep`. Fails unless every
    /// identity is kept and kept morphisms compose inside the kept set.
    pub fn wide_subcategory(&self, mut keep: impl FnMut(MorId) -> bool) -> Result<Self, FinCatError> {
        let kept: Vec<bool> = (0..self.num_morphisms()).map(&mut keep).collect();
        for o in 0..self.num_objects() {
            if !kept[self.identities[o]] {
                return Err(FinCatError::IdentityDropped(o));
            }
        }
        for (g, f) in self.composable_pairs() {
            if kept[g] && kept[f] {
                match self.compose(g, f) {
                    Some(h) if kept[h] => {}
                    _ => return Err(FinCatError::NotClosed { g, f }),
                }
            }
        }
        let objs: Vec<ObjId> = (0..self.num_objects()).collect();
        let mors: Vec<MorId> = (0..self.num_morphisms()).filter(|&m| kept[m]).collect();
        Ok(self.restrict(&objs, &objs, &mors).0)
    }

    fn restrict(&self, kept_objs: &[ObjId], obj_index: &[usize], mors: &[MorId]) -> (Self, super::CatFunctor) {
        let mut mor_index = vec![usize::MAX; self.num_morphisms()];
        for (i, &m) in mors.iter().enumerate() {
            mor_index[m] = i;
        }
        let labels = kept_objs.iter().map(|&o| self.labels[o].clone()).collect();
        let morphisms: Vec<(ObjId, ObjId)> = mors
            .iter()
            .map(|&m| (obj_index[self.sources[m]], obj_index[self.targets[m]]))
            .collect();
        let identities = kept_objs.iter().map(|&o| mor_index[self.identities[o]]).collect();
        let composition = match &self.composition {
            Composition::Thin(_) => {
                let homs = morphisms
                    .iter()
                    .enumerate()
                    .map(|(i, &(s, t))| ((s as u32, t as u32), i as u32))
                    .collect();
                Composition::Thin(homs)
            }
            _ => {
                let n = mors.len();
                let mut triples = Vec::new();
                for (fi, &f) in mors.iter().enumerate() {
                    for &g in &self.out[self.targets[f]] {
                        if mor_index[g] != usize::MAX {
                            if let Some(h) = self.compose(g, f) {
                                triples.push((mor_index[g], fi, mor_index[h]));
                            }
                        }
                    }
                }
                if n <= DENSE_LIMIT {
                    let mut table = vec![NONE; n * n];
                    for (g, f, h) in triples {
                        table[g * n + f] = h as u32;
                    }
                    Composition::Dense { n, table }
                } else {
                    Composition::Sparse(
                        triples.into_iter().map(|(g, f, h)| ((g as u32, f as u32), h as u32)).collect(),
                    )
                }
            }
        };
        let cat = Self::assemble(labels, morphisms, identities, composition);
        let inclusion = super::CatFunctor::new(kept_objs.to_vec(), mors.to_vec());
        (cat, inclusion)
    }

    /// The object with exactly one morphism to every object, if any. Among
    /// several (necessarily isomorphic) candidates the lowest id is returned.
    pub fn has_initial(&self) -> Option<ObjId> {
        let n = self.num_objects();
        (0..n).find(|&o| {
            let mut counts = vec![0usize; n];
            for &m in &self.out[o] {
                counts[self.targets[m]] += 1;
            }
            counts.iter().all(|&c| c == 1)
        })
    }
}

fn check_index(m: usize, n: usize) -> Result<(), FinCatError> {
    if m < n {
        Ok(())
    } else {
        Err(FinCatError::Malformed(format!("morphism id {m} out of range")))
    }
}

/// One failed category law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingComposite { g: MorId, f: MorId },
    WrongEndpoints { g: MorId, f: MorId, h: MorId },
    LeftIdentity { f: MorId },
    RightIdentity { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MissingComposite { g, f: ff } => write!(f, "missing composite {g} . {ff}"),
            Violation::WrongEndpoints { g, f: ff, h } => {
                write!(f, "composite {g} . {ff} = {h} has wrong endpoints")
            }
            Violation::LeftIdentity { f: ff } => write!(f, "id . {ff} != {ff}"),
            Violation::RightIdentity { f: ff } => write!(f, "{ff} . id != {ff}"),
            Violation::Associativity { h, g, f: ff } => write!(f, "({h} . {g}) . {ff} != {h} . ({g} . {ff})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinCategory {
        let arrows = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        FinCategory::thin((0..n).map(|i| i.to_string()).collect(), arrows).unwrap()
    }

    #[test]
    fn poset_and_group_are_categories() {
        assert!(chain(2).validate().is_ok());
        assert!(FinCategory::cyclic_group(2).validate().is_ok());
    }

    #[test]
    fn missing_composite_is_named() {
        // Z/2 with s . s left out of the table.
        let cat = FinCategory::from_parts(
            vec!["*".into()],
            vec![(0, 0), (0, 0)],
            vec![0],
            vec![(0, 0, 0), (0, 1, 1), (1, 0, 1)],
        )
        .unwrap();
        let report = cat.validate();
        assert_eq!(report.violations, vec![Violation::MissingComposite { g: 1, f: 1 }]);
    }

    #[test]
    fn opposite_of_chain() {
        let op = chain(2).opposite();
        let m = op.hom(1, 0).next().expect("1 -> 0 in the opposite");
        assert!(!op.is_identity(m));
        assert_eq!(op.hom(0, 1).count(), 0);
        assert!(op.validate().is_ok());
        assert_eq!(op.opposite(), chain(2));
    }

    #[test]
    fn opposite_group_reverses_multiplication() {
        // S3 table is non-commutative so reversal is visible.
        let perms = crate::fincat::tests_support::s3_perms();
        let table = crate::fincat::tests_support::perm_table(&perms);
        let g = FinCategory::from_group_table(&table).unwrap();
        let op = g.opposite();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(op.comp(a, b), g.comp(b, a));
            }
        }
    }

    #[test]
    fn full_subcategories() {
        let c = chain(3);
        let (all, _) = c.full_subcategory(|_| true);
        assert_eq!(all, c);
        let (none, _) = c.full_subcategory(|_| false);
        assert_eq!(none.num_objects(), 0);
        assert_eq!(none.num_morphisms(), 0);
        let (sub, inc) = c.full_subcategory(|o| o != 1);
        assert_eq!(sub.num_objects(), 2);
        assert_eq!(sub.num_morphisms(), 3);
        assert!(sub.validate().is_ok());
        assert!(inc.validate(&sub, &c).is_ok());
        assert_eq!(sub.label(1), "2");
    }

    #[test]
    fn wide_subcategories() {
        let c = chain(3);
        assert_eq!(c.wide_subcategory(|_| true).unwrap(), c);
        let disc = c.wide_subcategory(|m| c.is_identity(m)).unwrap();
        assert_eq!(disc.num_morphisms(), 3);
        assert!(disc.validate().is_ok());
        // keep 0->1 and 1->2 but drop 0->2
        let drop = c.hom(0, 2).next().unwrap();
        let err = c.wide_subcategory(|m| m != drop).unwrap_err();
        assert!(matches!(err, FinCatError::NotClosed { .. }));
    }

    #[test]
    fn initial_objects() {
        assert_eq!(chain(3).has_initial(), Some(0));
        assert_eq!(FinCategory::discrete(2).has_initial(), None);
        assert_eq!(FinCategory::empty().has_initial(), None);
        // Z/2 has two endomorphisms, so its object is not initial.
        assert_eq!(FinCategory::cyclic_group(2).has_initial(), None);
    }

    #[test]
    fn sparse_tables_above_the_dense_limit() {
        let n = 50; // 1275 arrows, thin
        let c = chain(n);
        assert!(c.validate().is_ok());
        let big = FinCategory::from_compose_fn(
            c.labels().to_vec(),
            (0..c.num_morphisms()).map(|m| (c.source(m), c.target(m))).collect(),
            (0..n).map(|o| c.identity(o)).collect(),
            |g, f| c.comp(g, f),
        )
        .unwrap();
        assert!(big.validate().is_ok());
    }
}
