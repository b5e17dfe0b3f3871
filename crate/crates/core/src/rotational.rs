//! Loopless chord diagrams up to rotation.
//!
//! Burnside over the cyclic group `C_{dn}` needs `f(dn, m)`, the number of
//! loopless diagrams fixed by a rotation of order `m`. Such a diagram is
//! cut into `m` sectors of `v = dn/m` points; the cut pieces are
//! `m`-linear diagrams, counted by loops per sector in a [`SectorTable`].
//!
//! Every block orbit of an `m`-symmetric diagram has some size `l | m`
//! with `(m/l) | d`; its blocks put `d~ = l·d/m` points into each sector,
//! and inside one sector the `l` blocks of the orbit behave like `l`
//! colours. Rebuilding a sector means inserting coloured points one at a
//! time, which is what the insertion table [`QTable`] counts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom, divisors, ensure_nonnegative, exact_div, factorial, falling, totient, ExactInt};
use crate::labelled::check_part_size;

/// Parameters of one insertion process inside a sector.
///
/// `colors` is the number of blocks the inserted points may belong to,
/// `slots` the number of gaps available to the first inserted point, and
/// `marked` the number of gaps that already hold one new point (one per
/// destroyed loop). New points go to the right of a marked point, never to
/// its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QContext {
    pub colors: i64,
    pub slots: i64,
    pub marked: i64,
}

impl QContext {
    pub fn new(colors: i64, slots: i64, marked: i64) -> Self {
        QContext { colors, slots, marked }
    }

    /// Internal points of the orbit that holds the cut edges, inserted into
    /// a sector of `remaining` points whose `loops` loops are all destroyed.
    pub fn closing(colors: i64, remaining: i64, loops: i64) -> Self {
        QContext::new(colors, remaining + 1, loops)
    }

    /// Points of the orbit that holds the first point of each sector:
    /// `destroyed` loops receive a point, `surviving` loops must stay free.
    pub fn leading(colors: i64, remaining: i64, destroyed: i64, surviving: i64) -> Self {
        QContext::new(colors, remaining + 1 - surviving, destroyed)
    }
}

/// `q_{k~,j}`: ordered insertions of `j` points leaving `k~` new loops.
#[derive(Clone, Debug)]
pub struct QTable {
    context: QContext,
    // entries[j][k~], k~ <= j
    entries: Vec<Vec<ExactInt>>,
}

impl QTable {
    pub fn context(&self) -> QContext {
        self.context
    }

    pub fn j_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, loops: i64, j: usize) -> ExactInt {
        if loops < 0 {
            return BigInt::zero();
        }
        self.entries
            .get(j)
            .and_then(|row| row.get(loops as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// `q_{0,j}` for `j = 0..=j_max`.
    pub fn loopless_row(&self) -> Vec<ExactInt> {
        self.entries.iter().map(|row| row[0].clone()).collect()
    }
}

pub fn q_table(context: QContext, j_max: usize) -> Result<QTable> {
    let QContext { colors: mu, slots, marked } = context;
    let mut entries: Vec<Vec<ExactInt>> = vec![vec![BigInt::one()]];
    for j in 0..j_max {
        let prev = &entries[j];
        let get = |kt: i64| -> ExactInt {
            if kt < 0 {
                BigInt::zero()
            } else {
                prev.get(kt as usize).cloned().unwrap_or_default()
            }
        };
        let ji = j as i64;
        let mut next = Vec::with_capacity(j + 2);
        for kt in 0..=(ji + 1) {
            let create = 2 * ji + marked - (kt - 1);
            let destroy = (kt + 1) * (mu - 1);
            let neutral = mu * (slots + ji) - (2 * ji - kt + marked) - kt * (mu - 1);
            let mut acc = BigInt::zero();
            for (coef, from) in [(create, kt - 1), (destroy, kt + 1), (neutral, kt)] {
                let q = get(from);
                if q.is_zero() {
                    continue;
                }
                if coef < 0 {
                    return Err(Error::NegativeCoefficient {
                        value: coef,
                        loops: from as usize,
                        step: j,
                        context: format!("{context:?}"),
                    });
                }
                acc += q * coef;
            }
            next.push(acc);
        }
        entries.push(next);
    }
    Ok(QTable { context, entries })
}

/// Insertions that also avoid loops with the two sector end points.
pub fn p_tilde(v: usize, q0: &[ExactInt]) -> ExactInt {
    let mut acc = BigInt::zero();
    for i in 0..=v {
        for j in 0..=(v - i) {
            let term = falling(v as i64, (i + j) as i64) * &q0[v - i - j];
            if (i + j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc
}

/// Insertions that also avoid a loop with the leading point.
pub fn p_hat(v: usize, q0: &[ExactInt]) -> ExactInt {
    let mut acc = BigInt::zero();
    for i in 0..=v {
        let term = falling(v as i64, i as i64) * &q0[v - i];
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Orbit sizes `l | m` admissible for blocks of size `d`, with the number
/// of points `d~ = l·d/m` such an orbit puts into each sector.
pub fn orbit_types(m: usize, d: usize) -> Vec<(usize, usize)> {
    divisors(m as u64)
        .unwrap_or_default()
        .into_iter()
        .map(|l| l as usize)
        .filter(|&l| (l * d) % m == 0)
        .map(|l| (l, l * d / m))
        .collect()
}

/// `a~_{v,k}`: `m`-linear diagrams with `v` points and `k` loops per sector.
#[derive(Clone, Debug)]
pub struct SectorTable {
    m: usize,
    d: usize,
    rows: Vec<Vec<ExactInt>>,
    // (colors, slots, marked, inserted) -> p^ / inserted!
    placements: HashMap<(i64, i64, i64, i64), ExactInt>,
}

impl SectorTable {
    pub fn new(m: usize, d: usize) -> Result<Self> {
        check_part_size(d)?;
        if m == 0 {
            return Err(Error::InvalidArgument("sector count m must be >= 1".into()));
        }
        Ok(SectorTable {
            m,
            d,
            rows: vec![vec![BigInt::one()]],
            placements: HashMap::new(),
        })
    }

    pub fn build(m: usize, d: usize, v_max: usize) -> Result<Self> {
        let mut table = Self::new(m, d)?;
        table.extend_to(v_max)?;
        Ok(table)
    }

    /// Rebuilds a stored table; callers are expected to have verified it.
    pub fn from_rows(m: usize, d: usize, rows: Vec<Vec<ExactInt>>) -> Result<Self> {
        let mut table = Self::new(m, d)?;
        if rows.is_empty() || rows[0] != vec![BigInt::one()] {
            return Err(Error::Consistency("sector table row 0 must be [1]".into()));
        }
        if let Some(v) = rows.iter().enumerate().position(|(v, row)| row.len() != v + 1) {
            return Err(Error::Consistency(format!("sector table row {v} has the wrong length")));
        }
        if rows.iter().flatten().any(|x| x < &BigInt::zero()) {
            return Err(Error::Consistency("negative sector table entry".into()));
        }
        table.rows = rows;
        Ok(table)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn v_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.rows
    }

    pub fn get(&self, v: i64, k: i64) -> ExactInt {
        if v < 0 || k < 0 {
            return BigInt::zero();
        }
        self.rows
            .get(v as usize)
            .and_then(|row| row.get(k as usize))
            .cloned()
            .unwrap_or_default()
    }

    pub fn extend_to(&mut self, v_max: usize) -> Result<()> {
        let types = orbit_types(self.m, self.d);
        while self.v_max() < v_max {
            let v = self.rows.len() as i64;
            let mut row = Vec::with_capacity(v as usize + 1);
            for k in 0..=v {
                let mut acc = BigInt::zero();
                for &(l, dt) in &types {
                    let (l, dt) = (l as i64, dt as i64);
                    let remaining = v - dt;
                    if remaining < 0 {
                        continue;
                    }
                    for t in (k - dt + 1).max(0)..=(k + dt - 1) {
                        let prev = self.get(remaining, t);
                        if prev.is_zero() {
                            continue;
                        }
                        acc += self.leading_coefficient(l, dt, remaining, k, t)? * prev;
                    }
                }
                row.push(ensure_nonnegative(acc, || {
                    format!("a~[{v},{k}] (m={}, d={})", self.m, self.d)
                })?);
            }
            self.rows.push(row);
        }
        Ok(())
    }

    /// Ways to add the orbit holding the first point of each sector to a
    /// diagram with `remaining` points and `t` loops per sector, ending with
    /// `k` loops per sector.
    fn leading_coefficient(&mut self, l: i64, dt: i64, remaining: i64, k: i64, t: i64) -> Result<ExactInt> {
        let mut acc = BigInt::zero();
        for i in 0..dt {
            // i loops among the new points, t + i - k old loops destroyed
            let destroyed = t + i - k;
            let inserted = dt - 2 * i - t + k - 1;
            let surviving = k - i;
            if destroyed < 0 || destroyed > t || inserted < 0 || surviving < 0 {
                continue;
            }
            let ctx = QContext::leading(l, remaining, destroyed, surviving);
            let placed = self.placements_for(ctx, inserted)?;
            acc += binom(dt - 1, i) * binom(t, destroyed) * num_traits::pow(BigInt::from(l), destroyed as usize) * placed;
        }
        Ok(acc)
    }

    fn placements_for(&mut self, ctx: QContext, inserted: i64) -> Result<ExactInt> {
        let key = (ctx.colors, ctx.slots, ctx.marked, inserted);
        if let Some(v) = self.placements.get(&key) {
            return Ok(v.clone());
        }
        let q = q_table(ctx, inserted as usize)?;
        let ordered = p_hat(inserted as usize, &q.loopless_row());
        let value = exact_div(&ordered, &factorial(inserted)?, &format!("p^ for {ctx:?}"))?;
        self.placements.insert(key, value.clone());
        Ok(value)
    }
}

pub fn sector_table(m: usize, d: usize, v_max: usize) -> Result<SectorTable> {
    SectorTable::build(m, d, v_max)
}

/// Memoized sector tables keyed by `(m, d)`.
#[derive(Clone, Debug, Default)]
pub struct SectorTables {
    tables: HashMap<(usize, usize), SectorTable>,
}

impl SectorTables {
    pub fn new() -> Self {
        Self::default()
    }

    /// The `(m, d)` table, extended to cover sector lengths up to `v_max`.
    pub fn table(&mut self, m: usize, d: usize, v_max: usize) -> Result<&SectorTable> {
        let table = match self.tables.entry((m, d)) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(SectorTable::new(m, d)?),
        };
        table.extend_to(v_max)?;
        Ok(table)
    }

    pub fn insert(&mut self, table: SectorTable) {
        self.tables.insert((table.m(), table.d()), table);
    }

    pub fn iter(&self) -> impl Iterator<Item = &SectorTable> {
        let mut keys: Vec<_> = self.tables.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter().map(move |k| &self.tables[&k])
    }
}

fn check_divisor(d: usize, n: usize, m: usize) -> Result<()> {
    check_part_size(d)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if m == 0 || (d * n) % m != 0 {
        return Err(Error::InvalidArgument(format!("m={m} does not divide dn={}", d * n)));
    }
    Ok(())
}

/// `f(dn, m)`: loopless chord diagrams fixed by a rotation of order `m`.
pub fn fixed_points(d: usize, n: usize, m: usize, tables: &mut SectorTables) -> Result<ExactInt> {
    check_divisor(d, n, m)?;
    // a single block: every neighbouring pair is a loop
    if n == 1 {
        return Ok(BigInt::zero());
    }
    let v = (d * n / m) as i64;
    let table = tables.table(m, d, v as usize)?;
    let mut acc = table.get(v, 0);
    for (l, dt) in orbit_types(m, d) {
        let (l, dt) = (l as i64, dt as i64);
        let remaining = v - dt;
        if remaining < 0 {
            continue;
        }
        for k in 0..=(dt - 2) {
            let prev = table.get(remaining, k);
            if prev.is_zero() {
                continue;
            }
            let inserted = dt - 2 - k;
            let q = q_table(QContext::closing(l, remaining, k), inserted as usize)?;
            let ordered = p_tilde(inserted as usize, &q.loopless_row());
            let weighted = num_traits::pow(BigInt::from(l), k as usize) * ordered * prev;
            acc -= exact_div(&weighted, &factorial(inserted)?, &format!("f({}, {m}) closing term", d * n))?;
        }
    }
    ensure_nonnegative(acc, || format!("f({}, {m}) for d={d}", d * n))
}

/// `f(dn, m)` for every divisor `m` of `dn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointTable {
    pub d: usize,
    pub n: usize,
    pub entries: Vec<(usize, ExactInt)>,
}

impl FixedPointTable {
    pub fn get(&self, m: usize) -> Option<&ExactInt> {
        self.entries.iter().find(|(mm, _)| *mm == m).map(|(_, v)| v)
    }

    /// `Σ_{m | dn} φ(m) f(dn, m)`.
    pub fn burnside_sum(&self) -> ExactInt {
        self.entries
            .iter()
            .map(|(m, f)| f * totient(*m as u64).unwrap_or(0))
            .sum()
    }
}

pub fn fixed_point_table(d: usize, n: usize, tables: &mut SectorTables) -> Result<FixedPointTable> {
    check_divisor(d, n, 1)?;
    let entries = divisors((d * n) as u64)?
        .into_iter()
        .map(|m| Ok((m as usize, fixed_points(d, n, m as usize, tables)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FixedPointTable { d, n, entries })
}

/// Loopless chord diagrams up to rotation.
pub fn b_rotational(d: usize, n: usize, tables: &mut SectorTables) -> Result<ExactInt> {
    let fixed = fixed_point_table(d, n, tables)?;
    exact_div(
        &fixed.burnside_sum(),
        &BigInt::from(d * n),
        &format!("cyclic Burnside sum for d={d}, n={n}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelled::{b_labelled, LabelledTriangle};

    fn big(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    #[test]
    fn q_table_basics() {
        let q = q_table(QContext::new(3, 4, 1), 4).unwrap();
        assert_eq!(q.get(0, 0), big(1));
        for j in 0..=4 {
            assert_eq!(q.get(j as i64 + 1, j), big(0));
            for kt in 0..=j as i64 {
                assert!(q.get(kt, j) >= big(0));
            }
        }
        // one slot, two colours
        let q = q_table(QContext::new(2, 1, 0), 1).unwrap();
        assert_eq!(q.get(0, 1), big(2));
    }

    #[test]
    fn single_colour_has_no_destruction_term() {
        // with one colour q_{0,j} is a falling factorial of the free slots
        let q = q_table(QContext::new(1, 7, 2), 4).unwrap();
        for j in 0..=4 {
            assert_eq!(q.get(0, j), falling(5, j as i64));
        }
    }

    #[test]
    fn negative_coefficient_is_reported() {
        let err = q_table(QContext::new(1, 0, 3), 2).unwrap_err();
        assert!(matches!(err, Error::NegativeCoefficient { .. }));
    }

    #[test]
    fn inclusion_exclusion_small_cases() {
        let q = q_table(QContext::new(2, 3, 1), 2).unwrap();
        let q0 = q.loopless_row();
        assert_eq!(p_tilde(0, &q0), big(1));
        assert_eq!(p_tilde(1, &q0), &q0[1] - 2 * &q0[0]);
        assert_eq!(p_hat(0, &q0), big(1));
        assert_eq!(p_hat(1, &q0), &q0[1] - 1);
    }

    #[test]
    fn orbit_types_respect_divisibility() {
        assert_eq!(orbit_types(2, 2), vec![(1, 1), (2, 2)]);
        assert_eq!(orbit_types(3, 2), vec![(3, 2)]);
        assert_eq!(orbit_types(6, 4), vec![(3, 2), (6, 4)]);
    }

    #[test]
    fn sector_table_examples() {
        let t = SectorTable::build(1, 2, 6).unwrap();
        assert_eq!(t.get(6, 0), big(5));
        let t = SectorTable::build(2, 2, 2).unwrap();
        // {13,24} and {14,23} on 4 points; the second has its loop across the cut
        assert_eq!(t.get(2, 0), big(2));
        assert_eq!(t.get(0, 0), big(1));
    }

    #[test]
    fn single_sector_is_the_linear_triangle() {
        for d in 2..=4 {
            let tri = LabelledTriangle::build(d, 5).unwrap();
            let sec = SectorTable::build(1, d, 5 * d).unwrap();
            for v in 0..=5 * d {
                for k in 0..=v {
                    let want = if v % d == 0 { tri.get((v / d) as i64, k as i64) } else { big(0) };
                    assert_eq!(sec.get(v as i64, k as i64), want, "d={d} v={v} k={k}");
                }
            }
        }
    }

    #[test]
    fn fixed_point_examples() {
        let mut tables = SectorTables::new();
        assert_eq!(fixed_points(2, 3, 2, &mut tables).unwrap(), big(4));
        assert_eq!(fixed_points(2, 3, 3, &mut tables).unwrap(), big(1));
        assert_eq!(fixed_points(2, 3, 1, &mut tables).unwrap(), big(4));
        assert_eq!(fixed_points(2, 2, 2, &mut tables).unwrap(), big(1));
        assert!(fixed_points(2, 3, 4, &mut tables).is_err());
    }

    #[test]
    fn rotational_examples() {
        let mut tables = SectorTables::new();
        assert_eq!(b_rotational(2, 5, &mut tables).unwrap(), big(36));
        assert_eq!(b_rotational(3, 4, &mut tables).unwrap(), big(126));
        assert_eq!(b_rotational(6, 3, &mut tables).unwrap(), big(335));
        assert_eq!(b_rotational(4, 1, &mut tables).unwrap(), big(0));
    }

    #[test]
    fn identity_rotation_fixes_every_diagram() {
        let mut tables = SectorTables::new();
        for d in 2..=5 {
            let tri = LabelledTriangle::build(d, 7).unwrap();
            for n in 1..=7 {
                let f1 = fixed_points(d, n, 1, &mut tables).unwrap();
                assert_eq!(f1, b_labelled(d, n, &tri).unwrap(), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn rotational_count_is_bracketed_by_labelled() {
        let mut tables = SectorTables::new();
        for d in 2..=4 {
            let tri = LabelledTriangle::build(d, 8).unwrap();
            for n in 2..=8 {
                let rot = b_rotational(d, n, &mut tables).unwrap();
                let lab = b_labelled(d, n, &tri).unwrap();
                assert!(rot <= lab && lab <= &rot * (d * n), "d={d} n={n}");
            }
        }
    }
}
