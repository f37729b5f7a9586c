//! Content-addressed on-disk cache of brute-force distributions.

use std::fs;
use std::path::PathBuf;

use ncpart_core::algebra::MultiPoly;
use ncpart_core::partition::SubwordPattern;
use ncpart_core::stats::distribution;
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "NCPART_CACHE";

/// Disabled when `dir` is `None`.
#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    /// From `NCPART_CACHE`, unless `disabled`.
    pub fn from_env(disabled: bool) -> Self {
        let dir = if disabled { None } else { std::env::var_os(ENV_VAR).filter(|d| !d.is_empty()).map(PathBuf::from) };
        Cache::new(dir)
    }

    fn path(&self, n: usize, tau: &SubwordPattern) -> Option<PathBuf> {
        let digest = Sha256::digest(format!("distribution\n{tau}\n{n}").as_bytes());
        self.dir.as_ref().map(|d| d.join(format!("{}.json", hex::encode(digest))))
    }

    /// Brute-force distribution of `tau` over `NC_n`, read from or written
    /// to the cache. Unreadable entries are recomputed.
    pub fn distribution(&self, n: usize, tau: &SubwordPattern) -> ncpart_core::Result<MultiPoly> {
        let path = self.path(n, tau);
        if let Some(p) = &path {
            if let Some(hit) = fs::read(p).ok().and_then(|b| serde_json::from_slice(&b).ok()) {
                return Ok(hit);
            }
        }
        let d = distribution(n, tau)?;
        if let Some(p) = path {
            let _ = store(&p, &d);
        }
        Ok(d)
    }
}

fn store(path: &PathBuf, d: &MultiPoly) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(d)?)?;
    fs::rename(tmp, path)
}
