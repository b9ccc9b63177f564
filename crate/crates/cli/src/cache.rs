//! On-disk cache of computed documents, one JSON file per (kind, n).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u64 = 1;
pub const CACHE_ENV: &str = "HYPEROCT_CACHE";

/// `--cache-dir`, else `$HYPEROCT_CACHE`, else the per-user data directory.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    dirs::data_dir().map(|d| d.join("hyperoct"))
}

pub fn checksum(payload: &Value) -> String {
    hex::encode(Sha256::digest(payload.to_string().as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir }
    }

    fn path(&self, kind: &str, n: usize) -> PathBuf {
        self.dir.join(format!("{kind}-n{n}.json"))
    }

    /// The cached payload, if present and valid for this schema version.
    pub fn load(&self, kind: &str, n: usize) -> Option<Value> {
        let text = fs::read_to_string(self.path(kind, n)).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        let valid = entry["schema_version"] == json!(SCHEMA_VERSION)
            && entry["n"] == json!(n)
            && entry["kind"] == json!(kind)
            && entry["checksum"].as_str() == Some(checksum(&entry["payload"]).as_str());
        valid.then(|| entry["payload"].clone())
    }

    /// Writes atomically through a temporary file in the cache directory.
    pub fn store(&self, kind: &str, n: usize, payload: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "kind": kind,
            "checksum": checksum(payload),
            "payload": payload,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(entry.to_string().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(kind, n)).map_err(|e| e.error)?;
        Ok(())
    }
}
