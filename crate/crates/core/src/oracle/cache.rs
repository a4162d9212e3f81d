//! Persistent store of verified witnesses keyed by `(pattern, n)`.
//!
//! The file is JSON:
//!
//! ```json
//! {"version":1,"entries":[{"n":3,"pattern":"4,4","profile":{..},"provenance":"searched"}]}
//! ```
//!
//! Entries are re-scored on load and dropped (with a warning) when they do not
//! realize their key. Each insert rewrites the file through a temporary file
//! and a rename.

use super::search::{search_witness, SearchConfig};
use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{OnceLock, RwLock};

pub const CACHE_ENV_VAR: &str = "BORDA_WITNESS_CACHE";
const CACHE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Constructed,
    Searched,
    Fixture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedWitness {
    pub profile: Profile,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    n: usize,
    pattern: LevelPattern,
    profile: Profile,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct CacheFile<E> {
    version: u32,
    entries: Vec<E>,
}

type Key = (LevelPattern, usize);

#[derive(Debug, Default)]
pub struct WitnessCache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<Key, CachedWitness>>,
}

impl WitnessCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Process-wide in-memory cache used by [`crate::decompose::realize`].
    pub fn global() -> &'static WitnessCache {
        static GLOBAL: OnceLock<WitnessCache> = OnceLock::new();
        GLOBAL.get_or_init(WitnessCache::in_memory)
    }

    /// Opens (or prepares to create) the cache file at `path`.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            match serde_json::from_str::<CacheFile<serde_json::Value>>(&text) {
                Ok(file) => {
                    for raw in file.entries {
                        match serde_json::from_value::<Entry>(raw) {
                            Ok(e) if e.profile.n() == e.n && e.profile.pattern() == e.pattern => {
                                entries.insert(
                                    (e.pattern, e.n),
                                    CachedWitness {
                                        profile: e.profile,
                                        provenance: e.provenance,
                                    },
                                );
                            }
                            Ok(e) => log::warn!(
                                "dropping cache entry ({}, n={}): witness does not verify",
                                e.pattern,
                                e.n
                            ),
                            Err(err) => log::warn!("dropping unreadable cache entry: {err}"),
                        }
                    }
                }
                Err(err) => log::warn!("ignoring corrupt cache file {}: {err}", path.display()),
            }
        }
        Ok(Self {
            path: Some(path),
            entries: RwLock::new(entries),
        })
    }

    /// The file named by `BORDA_WITNESS_CACHE`, or an in-memory cache.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CACHE_ENV_VAR) {
            Some(path) if !path.is_empty() => Self::open(path),
            _ => Ok(Self::in_memory()),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, pattern: &LevelPattern, n: usize) -> Option<CachedWitness> {
        self.entries
            .read()
            .unwrap()
            .get(&(pattern.clone(), n))
            .cloned()
    }

    /// Stores a witness after checking it realizes `pattern` with `n` voters.
    pub fn insert(
        &self,
        pattern: &LevelPattern,
        n: usize,
        profile: Profile,
        provenance: Provenance,
    ) -> Result<()> {
        let produced = profile.pattern();
        if &produced != pattern || profile.n() != n {
            return Err(Error::Construction {
                target: pattern.clone(),
                produced,
            });
        }
        let mut entries = self.entries.write().unwrap();
        entries.insert(
            (pattern.clone(), n),
            CachedWitness {
                profile,
                provenance,
            },
        );
        if let Some(path) = &self.path {
            persist(path, &entries)?;
        }
        Ok(())
    }

    pub fn get_or_search(
        &self,
        pattern: &LevelPattern,
        n: usize,
        config: &SearchConfig,
    ) -> Result<Profile> {
        if let Some(hit) = self.get(pattern, n) {
            return Ok(hit.profile);
        }
        let profile = search_witness(pattern, n, config)?;
        self.insert(pattern, n, profile.clone(), Provenance::Searched)?;
        Ok(profile)
    }
}

fn persist(path: &Path, entries: &BTreeMap<Key, CachedWitness>) -> Result<()> {
    let file = CacheFile {
        version: CACHE_VERSION,
        entries: entries
            .iter()
            .map(|((pattern, n), w)| Entry {
                n: *n,
                pattern: pattern.clone(),
                profile: w.profile.clone(),
                provenance: w.provenance,
            })
            .collect(),
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name()
            .and_then(|f| f.to_str())
            .unwrap_or("witness-cache")
    ));
    std::fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
