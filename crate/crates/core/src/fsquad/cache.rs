//! Content-addressed result cache: in memory, optionally mirrored to disk as
//! one JSON document per key.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Method, QuadResult};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheEntry {
    pub key: String,
    pub estimate: f64,
    pub error_bound: f64,
    pub method: Method,
    pub nodes: u64,
    pub created_at: u64,
    pub tol: f64,
}

impl CacheEntry {
    fn result(&self) -> QuadResult {
        QuadResult {
            estimate: self.estimate,
            error_bound: self.error_bound,
            method: self.method,
            nodes: self.nodes,
            converged: self.error_bound <= self.tol,
        }
    }
}

#[derive(Debug, Default)]
pub struct QuadCache {
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<String, CacheEntry>>,
}

/// SHA-256 of a canonical serialization, hex encoded.
pub fn hash_key(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl QuadCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// A cache persisted under `dir` (created on first store).
    pub fn on_disk(dir: impl Into<PathBuf>) -> Self {
        QuadCache {
            dir: Some(dir.into()),
            mem: Mutex::new(HashMap::new()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Returns a stored result computed at a tolerance no looser than `tol`.
    pub fn lookup(&self, key: &str, tol: f64) -> Option<QuadResult> {
        if let Some(e) = self.mem.lock().expect("cache lock").get(key) {
            if e.tol <= tol {
                return Some(e.result());
            }
        }
        let path = self.path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(_) => {
                let _ = fs::remove_file(&path);
                return None;
            }
        };
        if entry.key != key || !entry.estimate.is_finite() {
            let _ = fs::remove_file(&path);
            return None;
        }
        let ok = entry.tol <= tol;
        let r = entry.result();
        self.mem
            .lock()
            .expect("cache lock")
            .insert(key.to_string(), entry);
        ok.then_some(r)
    }

    pub fn store(&self, key: &str, tol: f64, r: &QuadResult) -> std::io::Result<()> {
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = CacheEntry {
            key: key.to_string(),
            estimate: r.estimate,
            error_bound: r.error_bound,
            method: r.method,
            nodes: r.nodes,
            created_at,
            tol,
        };
        if let Some(path) = self.path(key) {
            let dir = path.parent().expect("cache file has a parent");
            fs::create_dir_all(dir)?;
            let mut tmp = tempfile_in(dir, key)?;
            tmp.1.write_all(serde_json::to_string_pretty(&entry)?.as_bytes())?;
            tmp.1.sync_all()?;
            drop(tmp.1);
            fs::rename(&tmp.0, &path)?;
        }
        self.mem
            .lock()
            .expect("cache lock")
            .insert(key.to_string(), entry);
        Ok(())
    }

    /// Number of entries on disk (or in memory without a directory).
    pub fn len(&self) -> usize {
        match &self.dir {
            Some(d) => fs::read_dir(d)
                .map(|it| {
                    it.filter_map(|e| e.ok())
                        .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
                        .count()
                })
                .unwrap_or(0),
            None => self.mem.lock().expect("cache lock").len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Removes every entry; returns how many files were deleted.
    pub fn clear(&self) -> std::io::Result<usize> {
        self.mem.lock().expect("cache lock").clear();
        let mut n = 0;
        if let Some(d) = &self.dir {
            if d.exists() {
                for e in fs::read_dir(d)? {
                    let p = e?.path();
                    if p.extension().is_some_and(|x| x == "json") {
                        fs::remove_file(p)?;
                        n += 1;
                    }
                }
            }
        }
        Ok(n)
    }
}

fn tempfile_in(dir: &Path, key: &str) -> std::io::Result<(PathBuf, fs::File)> {
    let nonce = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let path = dir.join(format!(".{key}.{}.{nonce}.tmp", std::process::id()));
    let f = fs::File::create(&path)?;
    Ok((path, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> QuadResult {
        QuadResult {
            estimate: 0.25,
            error_bound: 1e-9,
            method: Method::TensorQuadrature,
            nodes: 128,
            converged: true,
        }
    }

    #[test]
    fn round_trip_and_tolerance_rule() {
        let dir = tempfile::tempdir().unwrap();
        let c = QuadCache::on_disk(dir.path());
        assert!(c.lookup("abc", 1e-6).is_none());
        c.store("abc", 1e-8, &sample()).unwrap();
        let fresh = QuadCache::on_disk(dir.path());
        assert_eq!(fresh.lookup("abc", 1e-6), Some(sample()));
        let fresh = QuadCache::on_disk(dir.path());
        c.store("def", 1e-3, &sample()).unwrap();
        assert!(fresh.lookup("def", 1e-6).is_none());
    }

    #[test]
    fn corrupt_entries_ignored() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
        let c = QuadCache::on_disk(dir.path());
        assert!(c.lookup("bad", 1.0).is_none());
        c.store("bad", 1e-6, &sample()).unwrap();
        assert!(QuadCache::on_disk(dir.path()).lookup("bad", 1e-6).is_some());
    }
}
