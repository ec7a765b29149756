use serde::{Deserialize, Serialize};

use crate::sset::text::write_sset;
use crate::sset::SimplicialSet;

use super::{betti_f2, coreduce, homology_upto, normalized_chains, HomologyError, HomologySummary};

/// How homology is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffMode {
    /// Integral homology only.
    #[default]
    Integer,
    /// Dimensions over the two-element field first, then integral homology,
    /// with the universal-coefficient identity checked between the two.
    F2First,
}

/// Persistent store for homology results, keyed by [`cache_key`].
pub trait HomologyCache: Send + Sync {
    fn get(&self, key: &str) -> Option<HomologySummary>;
    fn put(&self, key: &str, value: &HomologySummary);
}

/// Content hash of a simplicial set together with the computation parameters.
pub fn cache_key(x: &SimplicialSet, max_degree: usize) -> String {
    let mut text = write_sset(x);
    text.push_str(&format!("homology max_degree={max_degree}\n"));
    crate::sset::text::hex_digest(text.as_bytes())
}

/// Sizes before and after reduction, for reporting.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub ranks_before: Vec<usize>,
    pub ranks_after: Vec<usize>,
    pub cache_hit: bool,
}

/// Homology of simplicial sets with optional coreduction and caching.
pub struct Engine<'a> {
    pub reduce: bool,
    pub coeff: CoeffMode,
    pub cache: Option<&'a dyn HomologyCache>,
}

impl Default for Engine<'_> {
    fn default() -> Self {
        Self { reduce: true, coeff: CoeffMode::Integer, cache: None }
    }
}

impl<'a> Engine<'a> {
    pub fn with_cache(mut self, cache: &'a dyn HomologyCache) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Homology of `x` through `max_degree`, or lower where truncation makes
    /// higher degrees unknown.
    pub fn homology(&self, x: &SimplicialSet, max_degree: usize) -> Result<HomologySummary, HomologyError> {
        self.homology_with_stats(x, max_degree).map(|(s, _)| s)
    }

    pub fn homology_with_stats(
        &self,
        x: &SimplicialSet,
        max_degree: usize,
    ) -> Result<(HomologySummary, EngineStats), HomologyError> {
        let key = self.cache.map(|_| cache_key(x, max_degree));
        if let (Some(cache), Some(key)) = (self.cache, &key) {
            if let Some(hit) = cache.get(key) {
                let stats = EngineStats { cache_hit: true, ..Default::default() };
                return Ok((hit, stats));
            }
        }
        // one degree above the request is needed for its boundary
        let top = x.top().min(max_degree + 1);
        let cc = normalized_chains(x, top)?;
        let before = cc.ranks().to_vec();
        let cc = if self.reduce { coreduce(&cc).0 } else { cc };
        let stats = EngineStats { ranks_before: before, ranks_after: cc.ranks().to_vec(), cache_hit: false };
        let f2 = match (self.coeff, cc.valid_through()) {
            (CoeffMode::F2First, Some(v)) => Some(betti_f2(&cc, v.min(max_degree))?),
            _ => None,
        };
        let summary = homology_upto(&cc, max_degree);
        if let Some(f2) = f2 {
            if !summary.f2_consistent(&f2) {
                return Err(HomologyError::Inconsistent(format!(
                    "F2 dimensions {f2:?} disagree with integral homology {summary}"
                )));
            }
        }
        if let (Some(cache), Some(key)) = (self.cache, &key) {
            cache.put(key, &summary);
        }
        Ok((summary, stats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::sset::nerve;
    use std::collections::HashMap;
    use std::sync::Mutex;

    #[derive(Default)]
    struct MemCache(Mutex<HashMap<String, HomologySummary>>);

    impl HomologyCache for MemCache {
        fn get(&self, key: &str) -> Option<HomologySummary> {
            self.0.lock().unwrap().get(key).cloned()
        }
        fn put(&self, key: &str, value: &HomologySummary) {
            self.0.lock().unwrap().insert(key.to_string(), value.clone());
        }
    }

    #[test]
    fn modes_agree() {
        let x = nerve(&FinCategory::cyclic_group(3), 4).sset;
        let plain = Engine { reduce: false, ..Default::default() }.homology(&x, 3).unwrap();
        let reduced = Engine::default().homology(&x, 3).unwrap();
        let f2 = Engine { coeff: CoeffMode::F2First, ..Default::default() }.homology(&x, 3).unwrap();
        assert_eq!(plain, reduced);
        assert_eq!(plain, f2);
        assert_eq!(plain.to_string(), "H0 = Z, H1 = Z/3, H2 = 0, H3 = Z/3");
    }

    #[test]
    fn cache_hits_return_the_same_answer() {
        let cache = MemCache::default();
        let x = SimplicialSet::boundary_of_simplex(3);
        let e = Engine::default().with_cache(&cache);
        let (a, s1) = e.homology_with_stats(&x, 2).unwrap();
        let (b, s2) = e.homology_with_stats(&x, 2).unwrap();
        assert!(!s1.cache_hit && s2.cache_hit);
        assert_eq!(a, b);
        assert_ne!(cache_key(&x, 2), cache_key(&x, 1));
    }

    #[test]
    fn truncation_reports_unknown() {
        let x = nerve(&FinCategory::cyclic_group(2), 2).sset;
        let s = Engine::default().homology(&x, 3).unwrap();
        assert_eq!(s.unknown, vec![2, 3]);
    }
}
