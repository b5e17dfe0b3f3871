//! Published table values embedded as checksummed CSV assets.

use sha2::{Digest, Sha256};

use crate::engine::{parse_decimal, CountsRecord};
use crate::error::{Error, Result};

struct Asset {
    d: usize,
    text: &'static str,
    sha256: &'static str,
}

const ASSETS: [Asset; 5] = [
    Asset {
        d: 2,
        text: include_str!("../fixtures/loopless_d2.csv"),
        sha256: "0633d31a7b483e8e9232907d9bf2b955a9455c5c5edc119c5ca4d1279173b37e",
    },
    Asset {
        d: 3,
        text: include_str!("../fixtures/loopless_d3.csv"),
        sha256: "9a291900f6d80abe46df50d3edef1d96daeb0ac2a7eb3b76c896eb3e95d88208",
    },
    Asset {
        d: 4,
        text: include_str!("../fixtures/loopless_d4.csv"),
        sha256: "1a610db07b5da165d45f315811bff3a6ca7b61ef499c0751de0a7658abd2df19",
    },
    Asset {
        d: 5,
        text: include_str!("../fixtures/loopless_d5.csv"),
        sha256: "7930845244c1363940f4d58f1be65c015445b6c697eed70b35b49b5622fc708e",
    },
    Asset {
        d: 6,
        text: include_str!("../fixtures/loopless_d6.csv"),
        sha256: "e21a681823b15edead8500deff665fde67289e47a4024c17770d3055113ead2b",
    },
];

pub const HEADER: &str = "n,linear,labelled,rotations,all_symmetries";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSet {
    records: Vec<CountsRecord>,
}

impl FixtureSet {
    /// Loads every embedded table, checking each checksum first.
    pub fn load() -> Result<Self> {
        let mut records = Vec::new();
        for asset in &ASSETS {
            let digest = hex::encode(Sha256::digest(asset.text.as_bytes()));
            if digest != asset.sha256 {
                return Err(Error::Fixture(format!(
                    "checksum mismatch for the d={} table: {digest}",
                    asset.d
                )));
            }
            records.extend(parse_csv(asset.d, asset.text)?);
        }
        Ok(FixtureSet { records })
    }

    pub fn records(&self) -> &[CountsRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.records.iter().map(|r| r.d).collect();
        ds.dedup();
        ds
    }

    pub fn for_part_size(&self, d: usize) -> impl Iterator<Item = &CountsRecord> {
        self.records.iter().filter(move |r| r.d == d)
    }

    /// Largest `n` covered for part size `d`, 0 if none.
    pub fn coverage(&self, d: usize) -> usize {
        self.for_part_size(d).map(|r| r.n).max().unwrap_or(0)
    }

    pub fn get(&self, d: usize, n: usize) -> Option<&CountsRecord> {
        self.records.iter().find(|r| r.d == d && r.n == n)
    }
}

/// Parses one table in the export csv layout.
pub fn parse_csv(d: usize, text: &str) -> Result<Vec<CountsRecord>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(HEADER) {
        return Err(Error::Fixture(format!("d={d}: unexpected header")));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.trim().split(',').collect();
        let bad = |what: &str| Error::Fixture(format!("d={d}, line {}: {what}", i + 2));
        if fields.len() != 5 {
            return Err(bad("expected 5 fields"));
        }
        let n = fields[0].parse().map_err(|_| bad("bad n"))?;
        let value = |k: usize| parse_decimal(fields[k]).map_err(|e| bad(&e.to_string()));
        out.push(CountsRecord {
            d,
            n,
            linear: value(1)?,
            labelled: value(2)?,
            rotations: value(3)?,
            all_symmetries: value(4)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_load() {
        let f = FixtureSet::load().unwrap();
        assert_eq!(f.len(), 58);
        assert_eq!(f.part_sizes(), vec![2, 3, 4, 5, 6]);
        let cov: Vec<usize> = (2..=6).map(|d| f.coverage(d)).collect();
        assert_eq!(cov, vec![20, 13, 10, 8, 7]);
        assert_eq!(
            f.get(2, 20).unwrap().labelled.to_string(),
            "113184512236563589997407"
        );
        assert_eq!(f.get(5, 8).unwrap().all_symmetries.to_string(), "77938101941693076258854");
        assert!(f.get(7, 1).is_none());
    }

    #[test]
    fn rows_are_contiguous_from_one() {
        let f = FixtureSet::load().unwrap();
        for d in f.part_sizes() {
            let ns: Vec<usize> = f.for_part_size(d).map(|r| r.n).collect();
            assert_eq!(ns, (1..=f.coverage(d)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn csv_parser_rejects_garbage() {
        assert!(parse_csv(2, "n,a,b\n").is_err());
        assert!(parse_csv(2, &format!("{HEADER}\n1,0,0,0\n")).is_err());
        assert!(parse_csv(2, &format!("{HEADER}\n1,0,x,0,0\n")).is_err());
        assert_eq!(parse_csv(2, &format!("{HEADER}\n")).unwrap(), vec![]);
    }
}
