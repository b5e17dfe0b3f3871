//! Versioned on-disk copy of the memo tables.
//!
//! ```text
//! turanham-cache/1
//! sha256 <hex digest of everything after this line>
//! {"tables":[{"module":"labelled","d":2,"m":null,"rows":[["1"],...]}, ...]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::{parse_decimal, Engine};
use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::labelled::LabelledTriangle;
use crate::rotational::SectorTable;

pub const FORMAT: &str = "turanham-cache/1";
/// Largest part size accepted from a cache file.
pub const MAX_PART_SIZE: usize = 64;

#[derive(Serialize, Deserialize)]
struct Body {
    tables: Vec<StoredTable>,
}

#[derive(Serialize, Deserialize)]
struct StoredTable {
    module: String,
    d: usize,
    m: Option<usize>,
    rows: Vec<Vec<String>>,
}

fn encode_rows(rows: &[Vec<ExactInt>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn decode_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<ExactInt>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_decimal(s).map_err(|e| Error::Cache(e.to_string())))
                .collect()
        })
        .collect()
}

pub fn to_string(engine: &Engine) -> Result<String> {
    let mut tables: Vec<StoredTable> = engine
        .triangles()
        .map(|t| StoredTable {
            module: "labelled".into(),
            d: t.d(),
            m: None,
            rows: encode_rows(t.rows()),
        })
        .collect();
    let sectors = engine.sector_tables();
    tables.extend(sectors.iter().map(|t| StoredTable {
        module: "rotational".into(),
        d: t.d(),
        m: Some(t.m()),
        rows: encode_rows(t.rows()),
    }));
    let body = serde_json::to_string(&Body { tables })?;
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    Ok(format!("{FORMAT}\nsha256 {digest}\n{body}"))
}

/// Rebuilds an engine with default formula variants from cache text.
pub fn from_str(text: &str) -> Result<Engine> {
    let (version, rest) = text.split_once('\n').unwrap_or((text, ""));
    if version != FORMAT {
        return Err(Error::Cache(format!("unsupported cache format {version:?}, expected {FORMAT:?}")));
    }
    let (sum_line, body) = rest
        .split_once('\n')
        .ok_or_else(|| Error::Cache("checksum mismatch: file is truncated".into()))?;
    let expected = sum_line
        .strip_prefix("sha256 ")
        .ok_or_else(|| Error::Cache("missing checksum line".into()))?;
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    if digest != expected {
        return Err(Error::Cache(format!("checksum mismatch: stored {expected}, computed {digest}")));
    }
    let body: Body = serde_json::from_str(body).map_err(|e| Error::Cache(format!("malformed body: {e}")))?;

    let mut engine = Engine::new();
    for table in body.tables {
        if !(2..=MAX_PART_SIZE).contains(&table.d) {
            return Err(Error::Cache(format!("part size {} outside 2..={MAX_PART_SIZE}", table.d)));
        }
        let rows = decode_rows(&table.rows)?;
        let invalid = |e: Error| Error::Cache(format!("{} table for d={}: {e}", table.module, table.d));
        match (table.module.as_str(), table.m) {
            ("labelled", None) => {
                engine.insert_triangle(LabelledTriangle::from_rows(table.d, rows).map_err(invalid)?)
            }
            ("rotational", Some(m)) if m >= 1 => engine
                .sectors()
                .insert(SectorTable::from_rows(m, table.d, rows).map_err(invalid)?),
            (module, m) => {
                return Err(Error::Cache(format!("unknown table kind {module:?} with m={m:?}")))
            }
        }
    }
    Ok(engine)
}

pub fn save(engine: &Engine, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(engine)?)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Engine> {
    from_str(&std::fs::read_to_string(path)?)
}
