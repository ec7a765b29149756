use super::{FinCatError, FinCategory};

/// A finite partial order stored as sorted up-sets (each containing the
/// element itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    up: Vec<Vec<usize>>,
}

impl FinPoset {
    /// Builds a poset from its full relation. Reflexive pairs are added if
    /// missing; antisymmetry and transitivity are checked.
    pub fn from_relation(
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, FinCatError> {
        let n = labels.len();
        let mut up: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(FinCatError::Malformed(format!("pair ({a}, {b}) outside the poset")));
            }
            up[a].push(b);
        }
        for u in &mut up {
            u.sort_unstable();
            u.dedup();
        }
        let poset = Self { labels, up };
        poset.check()?;
        Ok(poset)
    }

    /// Builds a poset from a predicate `leq(a, b)` evaluated on all pairs.
    pub fn from_leq(labels: Vec<String>, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self, FinCatError> {
        let n = labels.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_relation(labels, pairs)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_leq((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b).expect("chain")
    }

    fn check(&self) -> Result<(), FinCatError> {
        for a in 0..self.len() {
            for &b in &self.up[a] {
                if a != b && self.leq(b, a) {
                    return Err(FinCatError::NotAPoset(format!("{a} and {b} violate antisymmetry")));
                }
                for &c in &self.up[b] {
                    if !self.leq(a, c) {
                        return Err(FinCatError::NotAPoset(format!("{a} <= {b} <= {c} but not {a} <= {c}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].binary_search(&b).is_ok()
    }

    /// Elements `b` with `a <= b`, sorted.
    pub fn up_set(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    /// All pairs `(a, b)` with `a <= b`, lexicographically sorted.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        self.up.iter().enumerate().flat_map(|(a, u)| u.iter().map(move |&b| (a, b))).collect()
    }

    pub fn relation_size(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// The poset as a thin category: one morphism per pair `a <= b`, numbered
    /// in lexicographic order of the pair.
    pub fn to_category(&self) -> FinCategory {
        FinCategory::thin(self.labels.clone(), self.relation()).expect("posets are thin categories")
    }

    /// Reads the order back from a thin category.
    pub fn from_category(cat: &FinCategory) -> Result<Self, FinCatError> {
        let pairs: Vec<_> = (0..cat.num_morphisms()).map(|m| (cat.source(m), cat.target(m))).collect();
        Self::from_relation(cat.labels().to_vec(), pairs)
    }
}
