//! Advisory result cache.
//!
//! Computed cohomology groups are stored one per JSON file, named by a hash
//! of the full request: the canonical JSON of the complex, the theory tag,
//! the coefficient description, the degree, and the ambient sphere dimension
//! used by the homotopy-quotient theories. Lookups are best effort; a
//! missing or unreadable file simply means "recompute". The verification
//! suites never trust a cached value: they recompute everything and report
//! any file that disagrees with the fresh result.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::FgAbGroup;
use crate::error::EqError;
use crate::zcw::Z2CwComplex;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "EQCOHOM_CACHE_DIR";

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{:02x}", b);
    }
    s
}

/// Hash identifying a complex up to relabeling-stable canonical form: the
/// digest of its canonicalized JSON serialization.
pub fn space_hash(x: &Z2CwComplex) -> Result<String, EqError> {
    let json = x.canonicalized().to_json_string()?;
    Ok(hex(&Sha256::digest(json.as_bytes())))
}

/// Everything a cached result depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    space_hash: String,
    theory: String,
    coeff: String,
    degree: usize,
    /// Sphere dimension for the homotopy-quotient theories; zero for the
    /// orbit-cochain theory, which needs no ambient space.
    ambient: usize,
}

impl CacheKey {
    pub fn new(
        x: &Z2CwComplex,
        theory: &str,
        coeff: &str,
        degree: usize,
        ambient: usize,
    ) -> Result<Self, EqError> {
        Ok(CacheKey {
            space_hash: space_hash(x)?,
            theory: theory.to_string(),
            coeff: coeff.to_string(),
            degree,
            ambient,
        })
    }

    /// File stem: digest of the key fields with unambiguous separators (the
    /// space hash is fixed-width hex, the rest contain no '|').
    fn stem(&self) -> String {
        let material = format!(
            "v1|{}|{}|{}|{}|{}",
            self.space_hash, self.theory, self.coeff, self.degree, self.ambient
        );
        hex(&Sha256::digest(material.as_bytes()))
    }
}

/// Stored form of a finitely generated abelian group. Torsion factors are
/// decimal strings so arbitrarily large invariant factors survive the trip.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CachedGroup {
    pub schema_version: u32,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl CachedGroup {
    pub fn from_group(g: &FgAbGroup) -> Self {
        CachedGroup {
            schema_version: 1,
            free_rank: g.free_rank(),
            torsion: g.torsion().iter().map(|d| d.to_string()).collect(),
        }
    }

    /// Whether this record describes the given group.
    pub fn matches(&self, g: &FgAbGroup) -> bool {
        self == &CachedGroup::from_group(g)
    }
}

/// Result of checking one cached entry against a fresh computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheAudit {
    /// No file for this key.
    Missing,
    /// The stored record equals the fresh result.
    Agrees,
    /// The file exists but does not match: either unreadable or a different
    /// group. The verification suites treat this as a failure.
    Disagrees { found: String },
}

pub struct ResultCache {
    root: PathBuf,
}

impl ResultCache {
    /// Cache rooted at an explicit directory.
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        ResultCache { root: dir.into() }
    }

    /// Cache at the configured location: `EQCOHOM_CACHE_DIR` if set,
    /// otherwise `$XDG_CACHE_HOME/eqcohom` or `$HOME/.cache/eqcohom`, falling
    /// back to a directory under the system temp dir.
    pub fn from_env() -> Self {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return ResultCache::at(PathBuf::from(dir));
        }
        if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME") {
            return ResultCache::at(PathBuf::from(xdg).join("eqcohom"));
        }
        if let Some(home) = std::env::var_os("HOME") {
            return ResultCache::at(PathBuf::from(home).join(".cache").join("eqcohom"));
        }
        ResultCache::at(std::env::temp_dir().join("eqcohom-cache"))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_of(&self, key: &CacheKey) -> PathBuf {
        self.root.join(format!("{}.json", key.stem()))
    }

    /// Best-effort read. Any problem (missing file, bad JSON, wrong schema
    /// version) is treated as a miss.
    pub fn lookup(&self, key: &CacheKey) -> Option<CachedGroup> {
        let text = fs::read_to_string(self.path_of(key)).ok()?;
        let rec: CachedGroup = serde_json::from_str(&text).ok()?;
        if rec.schema_version != 1 {
            return None;
        }
        Some(rec)
    }

    /// Write the result for this key, atomically: the record lands in a
    /// temporary file in the cache directory and is renamed into place, so
    /// concurrent readers never observe a half-written file.
    pub fn store(&self, key: &CacheKey, group: &FgAbGroup) -> Result<PathBuf, EqError> {
        fs::create_dir_all(&self.root)?;
        let rec = CachedGroup::from_group(group);
        let text = serde_json::to_string_pretty(&rec)
            .map_err(|e| EqError::Message(format!("cache serialization failed: {e}")))?;
        let path = self.path_of(key);
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.subsec_nanos())
            .unwrap_or(0);
        let tmp = self
            .root
            .join(format!(".{}.tmp-{}-{}", key.stem(), std::process::id(), nanos));
        fs::write(&tmp, text)?;
        match fs::rename(&tmp, &path) {
            Ok(()) => Ok(path),
            Err(e) => {
                let _ = fs::remove_file(&tmp);
                Err(e.into())
            }
        }
    }

    /// Compare a fresh computation against whatever the cache holds for this
    /// key, without modifying the cache.
    pub fn audit(&self, key: &CacheKey, fresh: &FgAbGroup) -> CacheAudit {
        let path = self.path_of(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => return CacheAudit::Missing,
        };
        match serde_json::from_str::<CachedGroup>(&text) {
            Ok(rec) if rec.matches(fresh) => CacheAudit::Agrees,
            Ok(rec) => CacheAudit::Disagrees {
                found: format!(
                    "cached free rank {} torsion {:?}",
                    rec.free_rank, rec.torsion
                ),
            },
            Err(_) => CacheAudit::Disagrees {
                found: "unreadable cache file".to_string(),
            },
        }
    }
}
