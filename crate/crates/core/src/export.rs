//! Table writers.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::engine::{Column, CountsRecord};
use crate::error::{Error, Result};
use crate::fixtures::HEADER;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
    Bfile,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            "bfile" => Ok(Format::Bfile),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

pub fn csv(records: &[CountsRecord]) -> String {
    let mut out = format!("{HEADER}\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{},{}", r.n, r.linear, r.labelled, r.rotations, r.all_symmetries);
    }
    out
}

pub fn markdown(records: &[CountsRecord]) -> String {
    let mut out = String::from("| n | linear | labelled | rotations | all_symmetries |\n");
    out.push_str("|---:|---:|---:|---:|---:|\n");
    for r in records {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            r.n, r.linear, r.labelled, r.rotations, r.all_symmetries
        );
    }
    out
}

pub fn json(records: &[CountsRecord]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(records)?;
    s.push('\n');
    Ok(s)
}

/// OEIS b-file: one "n value" line per record.
pub fn bfile(records: &[CountsRecord], column: Column) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "{} {}", r.n, r.get(column));
    }
    out
}

pub fn render(records: &[CountsRecord], format: Format, column: Option<Column>) -> Result<String> {
    match format {
        Format::Csv => Ok(csv(records)),
        Format::Markdown => Ok(markdown(records)),
        Format::Json => json(records),
        Format::Bfile => {
            let column = column
                .ok_or_else(|| Error::InvalidArgument("bfile output needs a single column".into()))?;
            Ok(bfile(records, column))
        }
    }
}
