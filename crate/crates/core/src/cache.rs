//! Content-addressed on-disk cache of basis records, one JSON file per
//! (datum fingerprint, weight, truncation, format version).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{BasisElement, BasisRecord, Provenance};
use crate::cartan::Weight;
use crate::uqminus::{Algebra, Monomial, MonomialExpr};

/// Bumped whenever the payload layout or the construction changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CachedElement {
    expr: MonomialExpr,
    eps: Vec<u32>,
    adapted: Monomial,
    provenance: Option<Provenance>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CachedRecord {
    version: u32,
    datum: String,
    weight: Weight,
    trunc: i32,
    elements: Vec<CachedElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub version: u32,
    pub datum: String,
    pub weight: String,
    pub trunc: i32,
    pub dim: usize,
    pub stale: bool,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(datum: &str, weight: &Weight, trunc: i32) -> String {
        let mut h = Sha256::new();
        h.update(format!("v{CACHE_VERSION}|{datum}|{}|{trunc}", weight.key()));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Rebuilds a record from its stored expressions; `None` on a miss or an unreadable entry.
    pub fn load(&self, alg: &Algebra, weight: &Weight, trunc: i32) -> Option<BasisRecord> {
        let datum = alg.datum().fingerprint();
        let text = fs::read_to_string(self.path(&Self::key(&datum, weight, trunc))).ok()?;
        let c: CachedRecord = serde_json::from_str(&text).ok()?;
        if c.version != CACHE_VERSION || c.datum != datum || &c.weight != weight || c.trunc != trunc
        {
            return None;
        }
        let elements = c
            .elements
            .into_iter()
            .map(|e| BasisElement {
                psi: alg.expr_element(weight, &e.expr),
                words: alg.expr_words(weight, &e.expr),
                expr: e.expr,
                eps: e.eps,
                adapted: e.adapted,
                provenance: e.provenance,
            })
            .collect();
        Some(BasisRecord::new(weight.clone(), elements))
    }

    /// Publishes a record by writing a temporary file in the cache directory and renaming it.
    pub fn store(&self, alg: &Algebra, rec: &BasisRecord, trunc: i32) -> std::io::Result<()> {
        let datum = alg.datum().fingerprint();
        let payload = CachedRecord {
            version: CACHE_VERSION,
            datum: datum.clone(),
            weight: rec.weight.clone(),
            trunc,
            elements: rec
                .elements
                .iter()
                .map(|e| CachedElement {
                    expr: e.expr.clone(),
                    eps: e.eps.clone(),
                    adapted: e.adapted.clone(),
                    provenance: e.provenance.clone(),
                })
                .collect(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(
            serde_json::to_string(&payload)
                .map_err(std::io::Error::other)?
                .as_bytes(),
        )?;
        tmp.persist(self.path(&Self::key(&datum, &rec.weight, trunc)))
            .map_err(|e| e.error)?;
        Ok(())
    }

    /// Every entry, sorted by file name; entries of other versions are marked stale.
    pub fn list(&self) -> std::io::Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        for ent in fs::read_dir(&self.dir)? {
            let path = ent?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let file = path.file_name().unwrap().to_string_lossy().into_owned();
            let text = fs::read_to_string(&path)?;
            let Ok(c) = serde_json::from_str::<CachedRecord>(&text) else {
                continue;
            };
            out.push(CacheEntry {
                file,
                version: c.version,
                datum: c.datum,
                weight: c.weight.key(),
                trunc: c.trunc,
                dim: c.elements.len(),
                stale: c.version != CACHE_VERSION,
            });
        }
        out.sort_by(|a, b| a.file.cmp(&b.file));
        Ok(out)
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> std::io::Result<usize> {
        let mut n = 0;
        for ent in fs::read_dir(&self.dir)? {
            let path = ent?.path();
            if path.extension().is_some_and(|e| e == "json") {
                fs::remove_file(path)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
