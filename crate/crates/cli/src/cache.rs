//! Content-addressed artifact cache.
//!
//! An entry is stored under the sha256 of its key. The file starts with the
//! hex sha256 of the body and a newline, so truncated or edited entries are
//! detected and recomputed.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "UNICOMPLEX_CACHE_DIR";
const SCHEMA: &str = "unicomplex-cache/1";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Outcome of a lookup.
#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(Vec<u8>),
    Miss,
    Corrupt,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, version: impl Into<String>) -> Self {
        Cache {
            dir: dir.into(),
            version: version.into(),
        }
    }

    /// --cache-dir, then the environment, then ~/.cache/unicomplex.
    pub fn locate(explicit: Option<&Path>) -> Option<Self> {
        let dir = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| {
                std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache/unicomplex"))
            })?;
        Some(Cache::new(dir, env!("CARGO_PKG_VERSION")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key for (command, family, p, n, method, ...) under this code version.
    pub fn key(&self, parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(SCHEMA.as_bytes());
        h.update([0]);
        h.update(self.version.as_bytes());
        for p in parts {
            h.update([0]);
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(&key[2..])
    }

    pub fn get(&self, key: &str) -> Lookup {
        let Ok(raw) = fs::read(self.path(key)) else {
            return Lookup::Miss;
        };
        let Some(nl) = raw.iter().position(|&b| b == b'\n') else {
            return Lookup::Corrupt;
        };
        let (head, body) = (&raw[..nl], &raw[nl + 1..]);
        if head != sha256_hex(body).as_bytes() {
            return Lookup::Corrupt;
        }
        Lookup::Hit(body.to_vec())
    }

    pub fn put(&self, key: &str, body: &[u8]) -> io::Result<()> {
        let path = self.path(key);
        fs::create_dir_all(path.parent().expect("nested path"))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut data = sha256_hex(body).into_bytes();
        data.push(b'\n');
        data.extend_from_slice(body);
        fs::write(&tmp, data)?;
        fs::rename(tmp, path)
    }

    /// Cached bytes, or compute, store and return them. Corrupt entries
    /// produce a warning on stderr and are overwritten.
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<Vec<u8>, E>,
    ) -> Result<Vec<u8>, E> {
        match self.get(key) {
            Lookup::Hit(body) => return Ok(body),
            Lookup::Corrupt => eprintln!("warning: corrupt cache entry {key}, recomputing"),
            Lookup::Miss => {}
        }
        let body = compute()?;
        if let Err(e) = self.put(key, &body) {
            eprintln!("warning: could not write cache entry {key}: {e}");
        }
        Ok(body)
    }
}

pub fn content_hash(bytes: &[u8]) -> String {
    sha256_hex(bytes)
}
