//! Loopless chord diagrams up to rotations and reflections.
//!
//! A diagram fixed by a reflection is determined by one half of the circle,
//! which is a 2-linear diagram. `h0`, `h1` and `h2` count the diagrams
//! fixed by one reflection whose axis passes through 0, 1 or 2 points.
//! Blocks met by the axis are split between both halves; the coefficients
//! below reinsert their points into a half without creating loops.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binom, ensure_nonnegative, exact_div, ExactInt};
use crate::labelled::check_part_size;
use crate::rotational::{fixed_point_table, SectorTables};

/// Per-axis fixed-point counts for one `(d, n)`.
///
/// The `alpha` vectors are the coefficients applied to the 2-linear table
/// rows, indexed by loop count; they are empty for branches that do not
/// apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionCounts {
    pub d: usize,
    pub n: usize,
    pub h0: ExactInt,
    pub h1: ExactInt,
    pub h2: ExactInt,
    pub alpha1: Vec<ExactInt>,
    pub alpha2: Vec<ExactInt>,
    pub alpha3: Vec<ExactInt>,
}

/// Ways to place `g` points of a split block into a half that already has
/// `inner` points and `k` loops, together with the `g` further points taken
/// from a range of `outer` gaps, so that no loop survives.
///
/// `j` points land next to the axis, `s` of the rest destroy loops, and the
/// remaining `g - j - s` go into free gaps; `x = k + j - s` marks the
/// points that the second group must avoid.
fn paired_insertion(g: i64, k: i64, inner: i64, outer: i64) -> ExactInt {
    let mut acc = BigInt::zero();
    for j in 0..=g {
        for s in 0..=k.min(g - j) {
            let x = k + j - s;
            acc += binom(g, j) * binom(k, s) * binom(inner - k, g - j - s) * binom(outer - x, g - x);
        }
    }
    acc
}

struct Half<'a> {
    tables: &'a mut SectorTables,
    d: usize,
}

impl Half<'_> {
    fn row(&mut self, v: i64, k: i64) -> Result<ExactInt> {
        if v < 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.tables.table(2, self.d, v as usize)?.get(v, k))
    }

    fn dot(&mut self, coeffs: &[ExactInt], v: i64) -> Result<ExactInt> {
        let mut acc = BigInt::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * self.row(v, k as i64)?;
            }
        }
        Ok(acc)
    }
}

fn check(d: usize, n: usize) -> Result<()> {
    check_part_size(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(())
}

pub fn reflection_counts(d: usize, n: usize, tables: &mut SectorTables) -> Result<ReflectionCounts> {
    check(d, n)?;
    let mut out = ReflectionCounts {
        d,
        n,
        h0: BigInt::zero(),
        h1: BigInt::zero(),
        h2: BigInt::zero(),
        alpha1: Vec::new(),
        alpha2: Vec::new(),
        alpha3: Vec::new(),
    };
    // a single block has no loopless diagram at all
    if n == 1 {
        return Ok(out);
    }
    let (di, ni) = (d as i64, n as i64);
    let mut half = Half { tables, d };

    if (d * n) % 2 == 1 {
        let v = di * (ni - 1) / 2;
        let h = (di - 1) / 2;
        out.alpha1 = (0..=h).map(|k| binom(v - 1 - k, h - k)).collect();
        out.h1 = half.dot(&out.alpha1, v)?;
    } else if d % 2 == 1 {
        out.h0 = half.row(di * ni / 2, 0)?;
        if n % 2 == 0 {
            let h = (di - 1) / 2;
            let v2 = di * (ni - 2) / 2;
            out.alpha2 = (0..di).map(|k| paired_insertion(h, k, v2, v2 + h)).collect();
            out.h2 = half.dot(&out.alpha2, v2)?;
        }
    } else {
        let h = di / 2;
        let v1 = di * (ni - 1) / 2;
        let v2 = di * (ni - 2) / 2;
        out.alpha1 = (0..h).map(|k| binom(v1 - 1 - k, h - 1 - k)).collect();
        out.alpha2 = (0..=(di - 2)).map(|k| paired_insertion(h - 1, k, v2, v1 - 1)).collect();
        out.alpha3 = (0..(h - 1)).map(|k| binom(v1 - 1 - k, h - 2 - k)).collect();
        let a1 = half.dot(&out.alpha1, v1)?;
        let h0 = half.row(di * ni / 2, 0)? - 2 * &a1 + half.dot(&out.alpha2, v2)? - half.dot(&out.alpha3, v1)?;
        out.h0 = ensure_nonnegative(h0, || format!("h0 for d={d}, n={n}"))?;
        out.h2 = a1;
    }
    Ok(out)
}

pub fn h0(d: usize, n: usize, tables: &mut SectorTables) -> Result<ExactInt> {
    Ok(reflection_counts(d, n, tables)?.h0)
}

pub fn h1(d: usize, n: usize, tables: &mut SectorTables) -> Result<ExactInt> {
    Ok(reflection_counts(d, n, tables)?.h1)
}

pub fn h2(d: usize, n: usize, tables: &mut SectorTables) -> Result<ExactInt> {
    Ok(reflection_counts(d, n, tables)?.h2)
}

/// How reflection counts enter the dihedral Burnside sum.
///
/// `Standard` weighs each of the `dn` reflections once. `Printed` adds
/// `(h0 + 2 h1 + h2) / 2` to the rotation part as the combination formula
/// is printed in the source derivation; it already fails at `d = n = 2`
/// and is kept only for the verification suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DihedralWeights {
    #[default]
    Standard,
    Printed,
}

/// Loopless chord diagrams up to rotations and reflections.
pub fn b_dihedral(d: usize, n: usize, tables: &mut SectorTables) -> Result<ExactInt> {
    b_dihedral_with(d, n, tables, DihedralWeights::Standard)
}

pub fn b_dihedral_with(
    d: usize,
    n: usize,
    tables: &mut SectorTables,
    weights: DihedralWeights,
) -> Result<ExactInt> {
    check(d, n)?;
    let dn = d * n;
    let rotations = fixed_point_table(d, n, tables)?.burnside_sum();
    let refl = reflection_counts(d, n, tables)?;
    let reflections = match weights {
        DihedralWeights::Standard if dn % 2 == 1 => &refl.h1 * dn,
        DihedralWeights::Standard => (&refl.h0 + &refl.h2) * (dn / 2),
        DihedralWeights::Printed => (&refl.h0 + 2 * &refl.h1 + &refl.h2) * dn,
    };
    exact_div(
        &(rotations + reflections),
        &BigInt::from(2 * dn),
        &format!("dihedral Burnside sum for d={d}, n={n}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotational::b_rotational;

    fn big(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    #[test]
    fn per_axis_examples() {
        let mut t = SectorTables::new();
        assert_eq!(h0(2, 3, &mut t).unwrap(), big(2));
        assert_eq!(h0(2, 2, &mut t).unwrap(), big(1));
        assert_eq!(h2(2, 3, &mut t).unwrap(), big(2));
        assert_eq!(h2(2, 2, &mut t).unwrap(), big(1));
        assert_eq!(h1(2, 5, &mut t).unwrap(), big(0));
        assert_eq!(h1(3, 1, &mut t).unwrap(), big(0));
        assert_eq!(h2(3, 3, &mut t).unwrap(), big(0));
    }

    #[test]
    fn odd_part_size_edge_axis_is_the_half_table() {
        let mut t = SectorTables::new();
        let want = t.table(2, 3, 3).unwrap().get(3, 0);
        assert_eq!(h0(3, 2, &mut t).unwrap(), want);
    }

    #[test]
    fn parity_gates() {
        let mut t = SectorTables::new();
        for d in 2..=5 {
            for n in 1..=6 {
                let r = reflection_counts(d, n, &mut t).unwrap();
                if (d * n) % 2 == 1 {
                    assert!(r.h0.is_zero() && r.h2.is_zero());
                } else {
                    assert!(r.h1.is_zero());
                }
            }
        }
    }

    #[test]
    fn dihedral_examples() {
        let mut t = SectorTables::new();
        assert_eq!(b_dihedral(2, 2, &mut t).unwrap(), big(1));
        assert_eq!(b_dihedral(2, 5, &mut t).unwrap(), big(29));
        assert_eq!(b_dihedral(4, 3, &mut t).unwrap(), big(13));
        assert_eq!(b_dihedral(6, 3, &mut t).unwrap(), big(203));
        assert_eq!(b_dihedral(3, 1, &mut t).unwrap(), big(0));
    }

    #[test]
    fn printed_weights_fail_at_the_smallest_case() {
        let mut t = SectorTables::new();
        let err = b_dihedral_with(2, 2, &mut t, DihedralWeights::Printed).unwrap_err();
        assert!(matches!(err, Error::InexactDivision { .. }));
    }

    #[test]
    fn dihedral_is_between_half_and_all_rotation_classes() {
        let mut t = SectorTables::new();
        for d in 2..=4 {
            for n in 2..=7 {
                let dih = b_dihedral(d, n, &mut t).unwrap();
                let rot = b_rotational(d, n, &mut t).unwrap();
                assert!(dih <= rot && rot <= 2 * &dih, "d={d} n={n}");
            }
        }
    }
}
