//! Append-only JSON-lines result cache.
//!
//! Each line is one [`CacheEntry`]. A file that fails to parse anywhere is
//! ignored as a whole and never written to.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub result: serde_json::Value,
    /// Exactly what the command printed on stdout.
    pub rendered: String,
    pub exit_code: u8,
    pub engine_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

pub struct Cache {
    path: PathBuf,
    entries: Vec<CacheEntry>,
    writable: bool,
}

impl Cache {
    pub fn open(path: PathBuf) -> Self {
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Self { path, entries: Vec::new(), writable: true },
            Err(e) => {
                log::warn!("cache {} unreadable ({e}); ignoring it", path.display());
                return Self { path, entries: Vec::new(), writable: false };
            }
        };
        let mut entries = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let parsed = line.map_err(|e| e.to_string()).and_then(|l| {
                if l.trim().is_empty() {
                    Ok(None)
                } else {
                    serde_json::from_str::<CacheEntry>(&l).map(Some).map_err(|e| e.to_string())
                }
            });
            match parsed {
                Ok(Some(entry)) => entries.push(entry),
                Ok(None) => {}
                Err(e) => {
                    log::warn!("cache {} is corrupt at line {} ({e}); ignoring it", path.display(), i + 1);
                    return Self { path, entries: Vec::new(), writable: false };
                }
            }
        }
        Self { path, entries, writable: true }
    }

    /// The latest entry for `key` written by this engine version.
    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.entries.iter().rev().find(|e| e.key == key && e.engine_version == ENGINE_VERSION)
    }

    pub fn put(&mut self, key: String, result: serde_json::Value, rendered: String, exit_code: u8) {
        if !self.writable {
            return;
        }
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CacheEntry { key, result, rendered, exit_code, engine_version: ENGINE_VERSION.to_string(), timestamp };
        let mut line = serde_json::to_string(&entry).expect("cache entries serialize");
        line.push('\n');
        let written = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .and_then(|mut f| f.write_all(line.as_bytes()));
        if let Err(e) = written {
            log::warn!("could not write cache {}: {e}", self.path.display());
        }
        self.entries.push(entry);
    }
}
