//! Content-addressed homology cache on disk: one JSON file per key.

use std::fs;
use std::path::{Path, PathBuf};

use opencat::homology::{HomologyCache, HomologySummary};

pub struct DirCache {
    dir: PathBuf,
}

impl DirCache {
    /// Opens `dir`, creating it if needed. Returns `None` with a warning on
    /// stderr when the directory cannot be written.
    pub fn open(dir: &Path) -> Option<Self> {
        let probe = dir.join(".probe");
        let ok = fs::create_dir_all(dir).and_then(|_| fs::write(&probe, b"")).and_then(|_| fs::remove_file(&probe));
        match ok {
            Ok(()) => Some(Self { dir: dir.to_path_buf() }),
            Err(e) => {
                eprintln!("warning: cache directory {} is not writable ({e}); caching disabled", dir.display());
                None
            }
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }
}

impl HomologyCache for DirCache {
    fn get(&self, key: &str) -> Option<HomologySummary> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        // unreadable entries are misses; `put` overwrites them
        serde_json::from_str(&text).ok()
    }

    fn put(&self, key: &str, value: &HomologySummary) {
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        let text = serde_json::to_string(value).expect("summaries serialize");
        if fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, self.path(key))).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use opencat::homology::{cache_key, Engine};
    use opencat::sset::SimplicialSet;

    #[test]
    fn corrupted_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DirCache::open(dir.path()).unwrap();
        let x = SimplicialSet::boundary_of_simplex(2);
        let engine = Engine::default().with_cache(&cache);
        let (first, s1) = engine.homology_with_stats(&x, 1).unwrap();
        let (_, s2) = engine.homology_with_stats(&x, 1).unwrap();
        assert!(!s1.cache_hit && s2.cache_hit);
        let path = cache.path(&cache_key(&x, 1));
        fs::write(&path, "{ not json").unwrap();
        let (again, s3) = engine.homology_with_stats(&x, 1).unwrap();
        assert!(!s3.cache_hit);
        assert_eq!(again, first);
        assert_eq!(serde_json::from_str::<HomologySummary>(&fs::read_to_string(&path).unwrap()).unwrap(), first);
    }

    #[test]
    fn unwritable_directory_disables_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain-file");
        fs::write(&file, "x").unwrap();
        assert!(DirCache::open(&file.join("sub")).is_none());
    }
}
