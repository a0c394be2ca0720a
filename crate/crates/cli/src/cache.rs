//! Content-addressed result cache: one JSON document per key under
//! `<dir>/<first two hex digits>/<sha256>.json`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::report::VERSION;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: Value,
    value: Value,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
}

static COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The key document: the engine version plus whatever identifies the
    /// computation.
    pub fn key(fields: Value) -> Value {
        serde_json::json!({ "version": VERSION, "fields": fields })
    }

    pub fn hash(key: &Value) -> String {
        hex::encode(Sha256::digest(key.to_string().as_bytes()))
    }

    pub fn path_for(&self, key: &Value) -> PathBuf {
        let h = Self::hash(key);
        self.dir.join(&h[..2]).join(format!("{h}.json"))
    }

    /// A stored value, if present and intact.
    pub fn get(&self, key: &Value) -> Option<Value> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if &e.key == key => Some(e.value),
            _ => {
                eprintln!("warning: ignoring corrupted cache entry {}", self.path_for(key).display());
                None
            }
        }
    }

    /// Writes through a temporary file and a rename, so readers never see
    /// a partial document.
    pub fn put(&self, key: &Value, value: &Value) {
        if let Err(e) = self.try_put(key, value) {
            eprintln!("warning: cache write failed: {e}");
        }
    }

    fn try_put(&self, key: &Value, value: &Value) -> std::io::Result<()> {
        let path = self.path_for(key);
        let parent = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(
            ".{}.{}.{}.tmp",
            Self::hash(key),
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let doc = Entry { key: key.clone(), value: value.clone() };
        fs::write(&tmp, serde_json::to_vec(&doc).expect("cache entries serialize"))?;
        fs::rename(&tmp, &path)
    }

    pub fn stats(&self) -> CacheStats {
        let mut s = CacheStats::default();
        let Ok(dirs) = fs::read_dir(&self.dir) else { return s };
        for d in dirs.flatten() {
            let Ok(files) = fs::read_dir(d.path()) else { continue };
            for f in files.flatten() {
                if f.path().extension().is_some_and(|x| x == "json") {
                    s.entries += 1;
                    s.bytes += f.metadata().map(|m| m.len()).unwrap_or(0);
                }
            }
        }
        s
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> std::io::Result<usize> {
        let n = self.stats().entries;
        if self.dir.exists() {
            for d in fs::read_dir(&self.dir)?.flatten() {
                let p = d.path();
                if p.is_dir() && p.file_name().is_some_and(|n| n.len() == 2) {
                    fs::remove_dir_all(p)?;
                }
            }
        }
        Ok(n)
    }
}
