//! Digest-keyed result cache for CLI runs.
//!
//! Entries are keyed by a digest of the exact inputs (file bytes, primes,
//! seed, command line), so renames never cause stale hits. Each entry
//! stores its own payload digest; a mismatch (corruption, tampering) is
//! treated as a miss. Writes go through a temporary file and rename so a
//! crashed run never leaves a half-written entry. An unusable directory
//! degrades to a pass-through cache with a warning on stderr.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

/// Hex SHA-256 over the concatenation of the given parts, with lengths
/// mixed in so part boundaries matter.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// No directory means no caching (every lookup misses, stores are
    /// dropped).
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn open(dir: &Path) -> Cache {
        match fs::create_dir_all(dir) {
            Ok(()) => Cache {
                dir: Some(dir.to_path_buf()),
            },
            Err(e) => {
                eprintln!(
                    "warning: cache directory {} unusable ({e}); continuing without cache",
                    dir.display()
                );
                Cache::disabled()
            }
        }
    }

    pub fn is_active(&self) -> bool {
        self.dir.is_some()
    }

    fn entry_path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Verbatim stored payload, or None on miss/corruption.
    pub fn lookup(&self, key: &str) -> Option<String> {
        let path = self.entry_path(key)?;
        let stored = fs::read_to_string(&path).ok()?;
        let (checksum, payload) = stored.split_once('\n')?;
        if digest(&[payload.as_bytes()]) == checksum {
            Some(payload.to_string())
        } else {
            eprintln!(
                "warning: cache entry {} failed its digest check; ignoring it",
                path.display()
            );
            None
        }
    }

    pub fn store(&self, key: &str, payload: &str) {
        let Some(path) = self.entry_path(key) else {
            return;
        };
        let body = format!("{}\n{payload}", digest(&[payload.as_bytes()]));
        let tmp = path.with_extension("tmp");
        let write = fs::write(&tmp, body).and_then(|()| fs::rename(&tmp, &path));
        if let Err(e) = write {
            eprintln!(
                "warning: could not write cache entry {} ({e}); continuing without it",
                path.display()
            );
            let _ = fs::remove_file(&tmp);
        }
    }
}
