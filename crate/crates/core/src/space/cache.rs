//! On-disk cache of bases, relation matrices and reduced forms.
//!
//! One JSON file per (k, kind) named `k<k>.<kind>.v<version>.json`:
//!
//! ```json
//! {"format_version": 1, "k": 2, "kind": "basis", "data": [...]}
//! ```
//!
//! `basis` and `zeros` hold canonical keys; `relations` holds
//! `{"ncols": n, "rows": [[[col, "n/d"], ...], ...]}` and `rref` holds
//! `{"rows": [...]}` in the same row format.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Basis, RelationSet, SpaceError};
use crate::linalg::{parse_rational, render_rational, Rref, SparseRow};

pub const FORMAT_VERSION: u32 = 1;
pub const KINDS: [&str; 4] = ["basis", "zeros", "relations", "rref"];

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct CacheEntry {
    pub k: usize,
    pub kind: String,
    pub size: u64,
    pub format_version: u32,
}

fn io(e: impl std::fmt::Display) -> SpaceError {
    SpaceError::Io(e.to_string())
}

type Loaded = (Basis, Vec<String>, RelationSet, Option<Rref>);

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, k: usize, kind: &str) -> PathBuf {
        self.dir.join(format!("k{k}.{kind}.v{FORMAT_VERSION}.json"))
    }

    fn write(&self, k: usize, kind: &str, data: Value) -> Result<(), SpaceError> {
        fs::create_dir_all(&self.dir).map_err(io)?;
        let doc = json!({"format_version": FORMAT_VERSION, "k": k, "kind": kind, "data": data});
        let path = self.path(k, kind);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&doc).map_err(io)?).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }

    fn read(&self, k: usize, kind: &str) -> Result<Option<Value>, SpaceError> {
        let path = self.path(k, kind);
        if !path.exists() {
            return Ok(None);
        }
        let bad = || SpaceError::CacheFormat(path.display().to_string());
        let doc: Value = serde_json::from_slice(&fs::read(&path).map_err(io)?).map_err(|_| bad())?;
        if doc["format_version"] != json!(FORMAT_VERSION) || doc["k"] != json!(k) || doc["kind"] != json!(kind) {
            return Err(bad());
        }
        Ok(Some(doc["data"].clone()))
    }

    pub(crate) fn store_space(
        &self,
        k: usize,
        basis: &Basis,
        zeros: &[String],
        relations: &RelationSet,
    ) -> Result<(), SpaceError> {
        self.write(k, "basis", json!(basis.keys()))?;
        self.write(k, "zeros", json!(zeros))?;
        let rows: Vec<Value> = relations
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&(c, v)| json!([c, format!("{v}/1")])).collect()))
            .collect();
        self.write(k, "relations", json!({"ncols": relations.ncols, "rows": rows}))
    }

    pub(crate) fn store_rref(&self, k: usize, rref: &Rref) -> Result<(), SpaceError> {
        let rows: Vec<Value> = rref
            .rows()
            .map(|(_, r)| Value::Array(r.iter().map(|(c, v)| json!([c, render_rational(v)])).collect()))
            .collect();
        self.write(k, "rref", json!({ "rows": rows }))
    }

    pub(crate) fn load_space(&self, k: usize) -> Result<Option<Loaded>, SpaceError> {
        let (Some(b), Some(z), Some(r)) = (self.read(k, "basis")?, self.read(k, "zeros")?, self.read(k, "relations")?) else {
            return Ok(None);
        };
        let bad = |kind: &str| SpaceError::CacheFormat(self.path(k, kind).display().to_string());
        let basis: Vec<String> = serde_json::from_value(b).map_err(|_| bad("basis"))?;
        let zeros: Vec<String> = serde_json::from_value(z).map_err(|_| bad("zeros"))?;
        let ncols = r["ncols"].as_u64().ok_or_else(|| bad("relations"))? as usize;
        let rows = parse_rows(&r["rows"]).ok_or_else(|| bad("relations"))?;
        let int_rows: Option<Vec<SparseRow>> = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(c, v)| {
                        if v.is_integer() {
                            i64::try_from(v.to_integer()).ok().map(|x| (c, x))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let relations = RelationSet {
            k,
            ncols,
            rows: int_rows.ok_or_else(|| bad("relations"))?,
        };
        let rref = match self.read(k, "rref")? {
            Some(v) => Some(Rref::from_reduced(parse_rows(&v["rows"]).ok_or_else(|| bad("rref"))?)),
            None => None,
        };
        Ok(Some((Basis::new(k, basis), zeros, relations, rref)))
    }

    /// Every cache file present, current format or not.
    pub fn status(&self) -> Result<Vec<CacheEntry>, SpaceError> {
        let mut out = Vec::new();
        if !self.dir.exists() {
            return Ok(out);
        }
        for entry in fs::read_dir(&self.dir).map_err(io)? {
            let entry = entry.map_err(io)?;
            let name = entry.file_name().to_string_lossy().to_string();
            if let Some((k, kind, version)) = parse_name(&name) {
                out.push(CacheEntry {
                    k,
                    kind,
                    size: entry.metadata().map_err(io)?.len(),
                    format_version: version,
                });
            }
        }
        out.sort();
        Ok(out)
    }

    /// Removes cache files; with `stale_only`, only those of other format versions.
    pub fn clear(&self, stale_only: bool) -> Result<usize, SpaceError> {
        let mut removed = 0;
        for e in self.status()? {
            if stale_only && e.format_version == FORMAT_VERSION {
                continue;
            }
            let path = self.dir.join(format!("k{}.{}.v{}.json", e.k, e.kind, e.format_version));
            fs::remove_file(path).map_err(io)?;
            removed += 1;
        }
        Ok(removed)
    }
}

fn parse_name(name: &str) -> Option<(usize, String, u32)> {
    let stem = name.strip_suffix(".json")?;
    let mut parts = stem.split('.');
    let k = parts.next()?.strip_prefix('k')?.parse().ok()?;
    let kind = parts.next()?.to_string();
    let version = parts.next()?.strip_prefix('v')?.parse().ok()?;
    if parts.next().is_some() || !KINDS.contains(&kind.as_str()) {
        return None;
    }
    Some((k, kind, version))
}

fn parse_rows(v: &Value) -> Option<Vec<crate::linalg::rational::QRow>> {
    v.as_array()?
        .iter()
        .map(|row| {
            row.as_array()?
                .iter()
                .map(|e| Some((e.get(0)?.as_u64()? as usize, parse_rational(e.get(1)?.as_str()?)?)))
                .collect()
        })
        .collect()
}
