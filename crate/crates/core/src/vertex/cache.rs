//! On-disk store of verified vertex values, one file per key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::VertexKey;
use crate::qnum::QRat;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("corrupt cache entry {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
}

/// Directory of `<sha256(canonical key JSON)>.json` files holding QRat JSON.
/// Writes go to a temporary file that is renamed into place, so concurrent
/// writers never expose a partial entry.
#[derive(Debug)]
pub struct ResultCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl ResultCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, CacheError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|source| CacheError::Io {
            path: dir.clone(),
            source,
        })?;
        Ok(ResultCache {
            dir,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &VertexKey) -> PathBuf {
        let digest = Sha256::digest(key.canonical_json().as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get(&self, key: &VertexKey) -> Result<Option<QRat>, CacheError> {
        let path = self.path_for(key);
        match fs::read_to_string(&path) {
            Ok(s) => {
                let v = serde_json::from_str(&s).map_err(|e| CacheError::Corrupt {
                    path: path.clone(),
                    reason: e.to_string(),
                })?;
                self.hits.fetch_add(1, Ordering::Relaxed);
                Ok(Some(v))
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                Ok(None)
            }
            Err(source) => Err(CacheError::Io { path, source }),
        }
    }

    pub fn put(&self, key: &VertexKey, w: &QRat) -> Result<(), CacheError> {
        let path = self.path_for(key);
        let io = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(serde_json::to_string(w).expect("QRat serializes").as_bytes())
            .map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// Removes every entry; returns how many files were deleted.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let io = |source| CacheError::Io {
            path: self.dir.clone(),
            source,
        };
        let mut n = 0;
        for entry in fs::read_dir(&self.dir).map_err(io)? {
            let p = entry.map_err(io)?.path();
            if p.extension().is_some_and(|e| e == "json") {
                fs::remove_file(&p).map_err(io)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
