//! On-disk cache of structure tables.
//!
//! A cache file is JSON Lines: one header line
//! `{"format_version":1,"n":N,"ring":R}`, then one line per left factor `B_q`
//! (canonical order) holding the JSON array of the products `B_q B_r` for
//! every `r`, each in element JSON. Files whose header carries a different
//! format version are ignored and rebuilt.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Ring, StructureTable};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "DESCENT_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Header {
    format_version: u32,
    n: usize,
    ring: Ring,
}

pub fn write_table<W: Write>(table: &StructureTable, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    let header = Header { format_version: FORMAT_VERSION, n: table.n(), ring: table.ring() };
    serde_json::to_writer(&mut w, &header)?;
    w.write_all(b"\n")?;
    for row in table.products().chunks(table.dim()) {
        serde_json::to_writer(&mut w, row)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

fn cache_error(path: &str, reason: impl Into<String>) -> Error {
    Error::Cache { path: path.to_string(), reason: reason.into() }
}

/// Reads a table written by [`write_table`]. `label` names the source in errors.
pub fn read_table<R: Read>(r: R, label: &str) -> Result<StructureTable> {
    let mut lines = BufReader::new(r).lines();
    let first = lines.next().ok_or_else(|| cache_error(label, "empty file"))??;
    let header: Header = serde_json::from_str(&first)?;
    if header.format_version != FORMAT_VERSION {
        return Err(cache_error(
            label,
            format!("format version {} (expected {FORMAT_VERSION})", header.format_version),
        ));
    }
    let mut products = Vec::new();
    for line in lines {
        let row: Vec<Element> = serde_json::from_str(&line?)?;
        products.extend(row);
    }
    StructureTable::from_parts(header.n, header.ring, products)
        .map_err(|e| cache_error(label, e.to_string()))
}

/// Resolves the cache directory: explicit path, then [`CACHE_DIR_ENV`], then
/// the platform cache location.
pub fn resolve_cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(p).join("descent");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(home).join(".cache").join("descent");
    }
    std::env::temp_dir().join("descent-cache")
}

/// Directory of cached tables keyed by `(n, ring)`.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, ring: Ring) -> PathBuf {
        self.dir.join(format!("table-n{n}-{ring}.jsonl"))
    }

    /// Cached table, or `None` when absent or written by another format version.
    pub fn load(&self, n: usize, ring: Ring) -> Result<Option<StructureTable>> {
        let path = self.path_for(n, ring);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        match read_table(file, &path.display().to_string()) {
            Ok(t) if t.n() == n && t.ring() == ring => Ok(Some(t)),
            Ok(_) => Ok(None),
            Err(Error::Cache { .. }) | Err(Error::Json(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn store(&self, table: &StructureTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(table.n(), table.ring());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        write_table(table, fs::File::create(&tmp)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads the table or builds and stores it. `unbounded` skips the desk-scale size check.
    pub fn load_or_build(&self, n: usize, ring: Ring, unbounded: bool) -> Result<StructureTable> {
        if let Some(t) = self.load(n, ring)? {
            return Ok(t);
        }
        let table = if unbounded {
            StructureTable::build_unbounded(n, ring)?
        } else {
            StructureTable::build(n, ring)?
        };
        self.store(&table)?;
        Ok(table)
    }
}
