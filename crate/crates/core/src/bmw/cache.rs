//! On-disk cache of the right-multiplication tables.
//!
//! Line-oriented JSON: a header object, then one record per table entry,
//! `[word, "T3" | "E3", [[index, "coefficient"], ...]]`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::LaurentPoly;

use super::{BmwAlgebra, SparseVec, BACKEND_ID};

pub const CACHE_FORMAT_VERSION: u32 = 1;
const FORMAT_NAME: &str = "bmw-structure-constants";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache header mismatch: {0}")]
    Mismatch(String),
    #[error("malformed cache line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct Header {
    format: String,
    version: u32,
    n: usize,
    backend: String,
    dim: usize,
}

type Record = (usize, String, Vec<(usize, String)>);

impl BmwAlgebra {
    fn header(&self) -> Header {
        Header {
            format: FORMAT_NAME.into(),
            version: CACHE_FORMAT_VERSION,
            n: self.n,
            backend: BACKEND_ID.into(),
            dim: self.dim(),
        }
    }

    /// Conventional file name inside a cache directory.
    pub fn cache_path(&self, dir: &Path) -> PathBuf {
        dir.join(format!(
            "bmw-n{}-{}-v{}.jsonl",
            self.n, BACKEND_ID, CACHE_FORMAT_VERSION
        ))
    }

    /// Write every table entry computed so far.
    pub fn save_tables(&self, path: &Path) -> Result<usize, CacheError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "{}", serde_json::to_string(&self.header()).unwrap())?;
        let tables = self.tables.read().unwrap();
        let mut keys: Vec<_> = tables.keys().copied().collect();
        keys.sort();
        for key in &keys {
            let (i, j, is_e) = *key;
            let g = format!("{}{}", if is_e { "E" } else { "T" }, j);
            let v: Vec<(usize, String)> = tables[key]
                .iter()
                .map(|(k, c)| (*k, c.to_string()))
                .collect();
            let rec: Record = (i, g, v);
            writeln!(out, "{}", serde_json::to_string(&rec).unwrap())?;
        }
        out.flush()?;
        Ok(keys.len())
    }

    /// Load table entries; refuses files written for another `n`, backend or
    /// format version.
    pub fn load_tables(&self, path: &Path) -> Result<usize, CacheError> {
        let reader = BufReader::new(File::open(path)?);
        let mut lines = reader.lines();
        let head = lines
            .next()
            .ok_or_else(|| CacheError::Mismatch("empty file".into()))??;
        let header: Header = serde_json::from_str(&head).map_err(|e| CacheError::Malformed {
            line: 1,
            msg: e.to_string(),
        })?;
        if header != self.header() {
            return Err(CacheError::Mismatch(format!(
                "expected {:?}, found {:?}",
                self.header(),
                header
            )));
        }
        let mut count = 0;
        let mut tables = self.tables.write().unwrap();
        for (ln, line) in lines.enumerate() {
            let line = line?;
            let bad = |msg: String| CacheError::Malformed { line: ln + 2, msg };
            let (i, g, v): Record = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
            let is_e = g.starts_with('E');
            let j: u8 = g[1..].parse().map_err(|_| bad(format!("generator {g}")))?;
            if i >= self.dim() || j == 0 || j as usize >= self.n {
                return Err(bad("index out of range".into()));
            }
            let mut sv: SparseVec = Vec::with_capacity(v.len());
            for (k, c) in v {
                let c: LaurentPoly = c.parse().map_err(|_| bad(format!("coefficient {c}")))?;
                sv.push((k, c));
            }
            tables.insert((i, j, is_e), Arc::new(sv));
            count += 1;
        }
        Ok(count)
    }
}
