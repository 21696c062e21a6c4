//! Results cache keyed by a digest of the command and its canonical
//! parameters. Entries are JSON files written by rename, so readers never see
//! a partial entry; a per-entry lock file serializes the computation of one
//! entry across processes without blocking the others.

use std::fs::{self, File, OpenOptions};
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "DELUNE_CACHE";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub digest: String,
    pub command: String,
    pub params: Value,
    pub version: String,
    /// Seconds since the Unix epoch at which the entry was written.
    pub timestamp: u64,
    pub result: Value,
}

/// Hex SHA-256 of the command and the compact JSON of its parameters.
pub fn request_digest(command: &str, params: &Value) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(params.to_string().as_bytes());
    hex::encode(h.finalize())
}

/// `DELUNE_CACHE`, then `$XDG_CACHE_HOME/delune`, then `~/.cache/delune`.
pub fn default_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(d).join("delune"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("delune"))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry_path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    /// The stored entry, if present, readable and written by this version.
    pub fn get(&self, command: &str, params: &Value) -> Option<CacheEntry> {
        let digest = request_digest(command, params);
        self.read(&digest).filter(|e| e.command == command && &e.params == params)
    }

    fn read(&self, digest: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.entry_path(digest)).ok()?;
        let e: CacheEntry = serde_json::from_str(&text).ok()?;
        (e.version == TOOL_VERSION).then_some(e)
    }

    pub fn put(&self, command: &str, params: &Value, result: &Value) -> io::Result<CacheEntry> {
        let digest = request_digest(command, params);
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CacheEntry {
            digest: digest.clone(),
            command: command.to_string(),
            params: params.clone(),
            version: TOOL_VERSION.to_string(),
            timestamp,
            result: result.clone(),
        };
        let tmp = self.dir.join(format!("{digest}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(&entry).map_err(io::Error::other)?)?;
        fs::rename(&tmp, self.entry_path(&digest))?;
        Ok(entry)
    }

    /// Returns the cached result, or computes, stores and returns it. The
    /// second value is true on a hit. Failures are not cached; a store that
    /// fails leaves the computed result usable.
    pub fn get_or_compute<E>(
        &self,
        command: &str,
        params: &Value,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<(Value, bool), E> {
        if let Some(e) = self.get(command, params) {
            return Ok((e.result, true));
        }
        let digest = request_digest(command, params);
        let lock = self.lock(&digest);
        // Another process may have finished the entry while we waited.
        if let Some(e) = self.get(command, params) {
            return Ok((e.result, true));
        }
        let result = compute()?;
        if let Err(err) = self.put(command, params, &result) {
            eprintln!("warning: cannot write cache entry {digest}: {err}");
        }
        drop(lock);
        Ok((result, false))
    }

    fn lock(&self, digest: &str) -> Option<File> {
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.dir.join(format!("{digest}.lock")))
            .ok()?;
        f.lock().ok()?;
        Some(f)
    }

    /// Deletes every entry and lock file.
    pub fn clear(&self) -> io::Result<()> {
        for e in fs::read_dir(&self.dir)? {
            let p = e?.path();
            if matches!(p.extension().and_then(|x| x.to_str()), Some("json" | "lock" | "tmp")) {
                fs::remove_file(p)?;
            }
        }
        Ok(())
    }
}
