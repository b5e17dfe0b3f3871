//! One place that owns every memo table and produces table rows.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exact_div, factorial, ExactInt};
use crate::labelled::{b_labelled_with, check_part_size, ClosingFormula, LabelledTriangle};
use crate::reflective::{b_dihedral_with, DihedralWeights};
use crate::rotational::{b_rotational, SectorTables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Linear,
    Labelled,
    Rotations,
    Dihedral,
}

impl Column {
    pub const ALL: [Column; 4] = [Column::Linear, Column::Labelled, Column::Rotations, Column::Dihedral];

    /// Header used in csv and markdown tables.
    pub fn header(self) -> &'static str {
        match self {
            Column::Linear => "linear",
            Column::Labelled => "labelled",
            Column::Rotations => "rotations",
            Column::Dihedral => "all_symmetries",
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::Linear => "linear",
            Column::Labelled => "labelled",
            Column::Rotations => "rotations",
            Column::Dihedral => "dihedral",
        })
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Column::Linear),
            "labelled" | "labeled" => Ok(Column::Labelled),
            "rotations" => Ok(Column::Rotations),
            "dihedral" | "all_symmetries" => Ok(Column::Dihedral),
            _ => Err(Error::InvalidArgument(format!("unknown column {s:?}"))),
        }
    }
}

/// One row of a result table. Integers serialize as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsRecord {
    pub d: usize,
    pub n: usize,
    #[serde(with = "decimal")]
    pub linear: ExactInt,
    #[serde(with = "decimal")]
    pub labelled: ExactInt,
    #[serde(with = "decimal")]
    pub rotations: ExactInt,
    #[serde(with = "decimal")]
    pub all_symmetries: ExactInt,
}

impl CountsRecord {
    pub fn get(&self, column: Column) -> &ExactInt {
        match column {
            Column::Linear => &self.linear,
            Column::Labelled => &self.labelled,
            Column::Rotations => &self.rotations,
            Column::Dihedral => &self.all_symmetries,
        }
    }
}

pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_decimal(&s).map_err(D::Error::custom)
    }
}

/// Parses a plain decimal integer, rejecting signs other than a leading
/// minus, whitespace and empty strings.
pub fn parse_decimal(s: &str) -> Result<ExactInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidArgument(format!("malformed integer {s:?}")));
    }
    s.parse().map_err(|_| Error::InvalidArgument(format!("malformed integer {s:?}")))
}

/// Memo tables shared by every count, plus the formula variants in use.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    triangles: HashMap<usize, LabelledTriangle>,
    sectors: SectorTables,
    closing: ClosingFormula,
    weights: DihedralWeights,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Engine using the given formula variants; only the verification
    /// suite needs anything but the defaults.
    pub fn with_variants(closing: ClosingFormula, weights: DihedralWeights) -> Self {
        Engine { closing, weights, ..Self::default() }
    }

    pub fn closing(&self) -> ClosingFormula {
        self.closing
    }

    pub fn weights(&self) -> DihedralWeights {
        self.weights
    }

    pub fn triangle(&mut self, d: usize, n_max: usize) -> Result<&LabelledTriangle> {
        check_part_size(d)?;
        let tri = match self.triangles.entry(d) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(LabelledTriangle::build(d, 0)?),
        };
        tri.extend_to(n_max)?;
        Ok(tri)
    }

    pub fn sectors(&mut self) -> &mut SectorTables {
        &mut self.sectors
    }

    pub fn sector_tables(&self) -> &SectorTables {
        &self.sectors
    }

    pub fn triangles(&self) -> impl Iterator<Item = &LabelledTriangle> {
        let mut ds: Vec<_> = self.triangles.keys().copied().collect();
        ds.sort_unstable();
        ds.into_iter().map(move |d| &self.triangles[&d])
    }

    pub(crate) fn insert_triangle(&mut self, tri: LabelledTriangle) {
        self.triangles.insert(tri.d(), tri);
    }

    pub fn linear(&mut self, d: usize, n: usize) -> Result<ExactInt> {
        Ok(self.triangle(d, n)?.get(n as i64, 0))
    }

    pub fn labelled(&mut self, d: usize, n: usize) -> Result<ExactInt> {
        let closing = self.closing;
        let tri = self.triangle(d, n)?;
        b_labelled_with(d, n, tri, closing)
    }

    pub fn rotations(&mut self, d: usize, n: usize) -> Result<ExactInt> {
        b_rotational(d, n, &mut self.sectors)
    }

    pub fn dihedral(&mut self, d: usize, n: usize) -> Result<ExactInt> {
        b_dihedral_with(d, n, &mut self.sectors, self.weights)
    }

    pub fn column(&mut self, d: usize, n: usize, column: Column) -> Result<ExactInt> {
        check(d, n)?;
        match column {
            Column::Linear => self.linear(d, n),
            Column::Labelled => self.labelled(d, n),
            Column::Rotations => self.rotations(d, n),
            Column::Dihedral => self.dihedral(d, n),
        }
    }

    pub fn record(&mut self, d: usize, n: usize) -> Result<CountsRecord> {
        check(d, n)?;
        Ok(CountsRecord {
            d,
            n,
            linear: self.linear(d, n)?,
            labelled: self.labelled(d, n)?,
            rotations: self.rotations(d, n)?,
            all_symmetries: self.dihedral(d, n)?,
        })
    }

    /// Records for `n = 1..=n_max`.
    pub fn records(&mut self, d: usize, n_max: usize) -> Result<Vec<CountsRecord>> {
        check_part_size(d)?;
        (1..=n_max).map(|n| self.record(d, n)).collect()
    }
}

fn check(d: usize, n: usize) -> Result<()> {
    check_part_size(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(())
}

/// Undirected Hamiltonian cycles of `K_{d,...,d}` from the number of
/// loopless labelled diagrams: `b_n (d!)^n n! / (2nd)`.
pub fn hamiltonian_cycles(d: usize, n: usize, labelled: &ExactInt) -> Result<ExactInt> {
    check(d, n)?;
    let orderings = num_traits::pow(factorial(d as i64)?, n) * factorial(n as i64)?;
    exact_div(
        &(labelled * orderings),
        &ExactInt::from(2 * n * d),
        &format!("Hamiltonian cycles of K_{d}^{n}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn records_for_small_tables() {
        let mut e = Engine::new();
        let r = e.record(2, 4).unwrap();
        assert_eq!(r.linear, big(36));
        assert_eq!(r.labelled, big(31));
        assert_eq!(r.rotations, big(7));
        assert_eq!(r.all_symmetries, big(7));
        assert_eq!(e.column(3, 3, Column::Labelled).unwrap(), big(22));
        assert!(e.record(1, 3).is_err());
        assert!(e.record(2, 0).is_err());
    }

    #[test]
    fn column_names_round_trip() {
        for c in Column::ALL {
            assert_eq!(c.to_string().parse::<Column>().unwrap(), c);
            assert_eq!(c.header().parse::<Column>().unwrap(), c);
        }
        assert!("total".parse::<Column>().is_err());
    }

    #[test]
    fn record_json_uses_decimal_strings() {
        let mut e = Engine::new();
        let r = e.record(2, 3).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"d":2,"n":3,"linear":"5","labelled":"4","rotations":"2","all_symmetries":"2"}"#
        );
        assert_eq!(serde_json::from_str::<CountsRecord>(&json).unwrap(), r);
        assert!(serde_json::from_str::<CountsRecord>(&json.replace("\"5\"", "\"5x\"")).is_err());
    }

    #[test]
    fn decimal_parsing_is_strict() {
        assert_eq!(parse_decimal("-12").unwrap(), big(-12));
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("+3").is_err());
        assert!(parse_decimal(" 3").is_err());
        assert!(parse_decimal("-").is_err());
    }

    #[test]
    fn hamiltonian_relation() {
        assert_eq!(hamiltonian_cycles(2, 3, &big(4)).unwrap(), big(16));
        assert_eq!(hamiltonian_cycles(2, 2, &big(1)).unwrap(), big(1));
        assert_eq!(hamiltonian_cycles(3, 2, &big(1)).unwrap(), big(6));
    }
}
