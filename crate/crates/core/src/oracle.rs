//! Brute-force ground truth for small diagrams.
//!
//! Everything here enumerates set partitions directly and knows nothing
//! about the recurrences in the other modules. Partitions are generated
//! with the smallest unassigned point always opening the next block, so
//! every diagram appears exactly once and its labels are already in
//! canonical order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::labelled::check_part_size;

/// Environment variable that raises (or lowers) every oracle size bound.
pub const BOUND_ENV: &str = "TURANHAM_ORACLE_MAX_POINTS";

pub const ENUMERATION_BOUND: usize = 14;
pub const ORBIT_BOUND: usize = 12;
pub const SECTOR_BOUND: usize = 12;
pub const HAMILTONIAN_BOUND: usize = 10;

fn bound(what: &'static str, points: usize, default: usize) -> Result<()> {
    let limit = std::env::var(BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default);
    if points > limit {
        return Err(Error::OracleBound { what, points, bound: limit });
    }
    Ok(())
}

/// How neighbouring points are paired when counting loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    Cyclic,
    Linear,
    /// Linear inside each of `m` equal sectors, no pairs across sector ends.
    Sectored(usize),
}

/// A partition of `0..labels.len()` into blocks of size `d`, stored as the
/// block index of every point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    pub d: usize,
    pub labels: Vec<u8>,
}

impl Diagram {
    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    /// Blocks sorted by minimum element, points ascending within a block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (p, &b) in self.labels.iter().enumerate() {
            let b = b as usize;
            if b >= blocks.len() {
                blocks.resize(b + 1, Vec::new());
            }
            blocks[b].push(p);
        }
        blocks.sort();
        blocks
    }

    pub fn loops(&self, adjacency: Adjacency) -> usize {
        loops(&self.labels, adjacency)
    }

    pub fn canonical(&self) -> Diagram {
        Diagram { d: self.d, labels: canonical(&self.labels) }
    }
}

fn loops(labels: &[u8], adjacency: Adjacency) -> usize {
    let n = labels.len();
    if n < 2 {
        return 0;
    }
    match adjacency {
        Adjacency::Linear => labels.windows(2).filter(|w| w[0] == w[1]).count(),
        Adjacency::Cyclic => (0..n).filter(|&i| labels[i] == labels[(i + 1) % n]).count(),
        Adjacency::Sectored(m) => {
            let v = n / m;
            (0..n).filter(|&i| (i + 1) % v != 0 && labels[i] == labels[i + 1]).count()
        }
    }
}

fn canonical(labels: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&b| {
            if map[b as usize] == u8::MAX {
                map[b as usize] = next;
                next += 1;
            }
            map[b as usize]
        })
        .collect()
}

fn image(labels: &[u8], map: impl Fn(usize) -> usize) -> Vec<u8> {
    canonical(&(0..labels.len()).map(|i| labels[map(i)]).collect::<Vec<_>>())
}

fn rotated(labels: &[u8], shift: usize) -> Vec<u8> {
    let n = labels.len();
    image(labels, |i| (i + shift) % n)
}

fn reflected(labels: &[u8], centre: usize) -> Vec<u8> {
    let n = labels.len();
    image(labels, |i| (centre + n - i) % n)
}

fn choose_rest(
    labels: &mut [u8],
    block: u8,
    from: usize,
    left: usize,
    d: usize,
    visit: &mut dyn FnMut(&[u8]),
) {
    if left == 0 {
        fill(labels, block + 1, d, visit);
        return;
    }
    for p in from..labels.len() {
        if labels[p] == u8::MAX {
            labels[p] = block;
            choose_rest(labels, block, p + 1, left - 1, d, visit);
            labels[p] = u8::MAX;
        }
    }
}

fn fill(labels: &mut [u8], block: u8, d: usize, visit: &mut dyn FnMut(&[u8])) {
    match labels.iter().position(|&b| b == u8::MAX) {
        None => visit(labels),
        Some(first) => {
            labels[first] = block;
            choose_rest(labels, block, first + 1, d - 1, d, visit);
            labels[first] = u8::MAX;
        }
    }
}

/// Runs `step` over every partition of `points` points into blocks of size
/// `d`, in parallel over the block containing point 0.
fn fold_partitions<A, I, S, M>(points: usize, d: usize, init: I, step: S, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &[u8]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    if points % d != 0 {
        return init();
    }
    if points == 0 {
        let mut acc = init();
        step(&mut acc, &[]);
        return acc;
    }
    let mut firsts = Vec::new();
    let mut seed = vec![u8::MAX; points];
    seed[0] = 0;
    choose_rest_collect(&mut seed, 1, d - 1, &mut firsts);
    firsts
        .into_par_iter()
        .map(|mut labels| {
            let mut acc = init();
            fill(&mut labels, 1, d, &mut |l| step(&mut acc, l));
            acc
        })
        .reduce(&init, &merge)
}

fn choose_rest_collect(labels: &mut Vec<u8>, from: usize, left: usize, out: &mut Vec<Vec<u8>>) {
    if left == 0 {
        out.push(labels.clone());
        return;
    }
    for p in from..labels.len() {
        labels[p] = 0;
        choose_rest_collect(labels, p + 1, left - 1, out);
        labels[p] = u8::MAX;
    }
}

fn count_partitions(points: usize, d: usize, keep: impl Fn(&[u8]) -> bool + Sync + Send) -> ExactInt {
    let total = fold_partitions(
        points,
        d,
        || 0u64,
        |acc, l| {
            if keep(l) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    );
    BigInt::from(total)
}

fn check(d: usize) -> Result<()> {
    check_part_size(d)?;
    if d > 255 {
        return Err(Error::InvalidArgument("oracle supports d <= 255".into()));
    }
    Ok(())
}

/// Every diagram with `n` blocks of size `d`, in generation order.
pub fn diagrams(d: usize, n: usize) -> Result<Vec<Diagram>> {
    check(d)?;
    bound("diagram listing", d * n, ENUMERATION_BOUND)?;
    let mut out = fold_partitions(
        d * n,
        d,
        Vec::new,
        |acc: &mut Vec<Diagram>, l| acc.push(Diagram { d, labels: l.to_vec() }),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    out.sort();
    Ok(out)
}

/// Number of linear diagrams by exact loop count.
pub type LoopHistogram = BTreeMap<usize, ExactInt>;

pub fn enumerate_linear(d: usize, n: usize) -> Result<LoopHistogram> {
    check(d)?;
    bound("linear enumeration", d * n, ENUMERATION_BOUND)?;
    let counts = fold_partitions(
        d * n,
        d,
        || vec![0u64; d * n + 1],
        |acc, l| acc[loops(l, Adjacency::Linear)] += 1,
        |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
    );
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k, BigInt::from(c)))
        .collect())
}

pub fn enumerate_chord_loopless(d: usize, n: usize) -> Result<ExactInt> {
    check(d)?;
    bound("chord enumeration", d * n, ENUMERATION_BOUND)?;
    if n == 0 {
        return Ok(BigInt::from(0));
    }
    Ok(count_partitions(d * n, d, |l| loops(l, Adjacency::Cyclic) == 0))
}

/// Loopless diagrams fixed by the rotation of order `m`.
pub fn fixed_under_rotation(d: usize, n: usize, m: usize) -> Result<ExactInt> {
    check(d)?;
    let points = d * n;
    if n == 0 || m == 0 || points % m != 0 {
        return Err(Error::InvalidArgument(format!("m={m} does not divide dn={points}")));
    }
    bound("rotation fixed points", points, ENUMERATION_BOUND)?;
    let shift = points / m;
    Ok(count_partitions(points, d, move |l| {
        loops(l, Adjacency::Cyclic) == 0 && rotated(l, shift) == l
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Through no points; needs an even number of points.
    Edge,
    /// Through one point (odd count) or two opposite points (even count).
    Vertex,
}

/// Loopless diagrams fixed by one representative reflection of the class.
pub fn fixed_under_reflection(d: usize, n: usize, axis: Axis) -> Result<ExactInt> {
    check(d)?;
    let points = d * n;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if axis == Axis::Edge && points % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "an axis through no points needs an even point count, got {points}"
        )));
    }
    bound("reflection fixed points", points, ENUMERATION_BOUND)?;
    let centre = match axis {
        Axis::Edge => points - 1,
        Axis::Vertex => 0,
    };
    Ok(count_partitions(points, d, move |l| {
        loops(l, Adjacency::Cyclic) == 0 && reflected(l, centre) == l
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Cyclic,
    Dihedral,
}

/// Orbits of loopless diagrams, counted as diagrams that are the least of
/// all their images.
pub fn orbit_count(d: usize, n: usize, group: Group) -> Result<ExactInt> {
    check(d)?;
    let points = d * n;
    bound("orbit count", points, ORBIT_BOUND)?;
    if n == 0 {
        return Ok(BigInt::from(0));
    }
    Ok(count_partitions(points, d, move |l| {
        if loops(l, Adjacency::Cyclic) != 0 {
            return false;
        }
        (1..points).all(|s| l <= rotated(l, s).as_slice())
            && (group == Group::Cyclic || (0..points).all(|c| l <= reflected(l, c).as_slice()))
    }))
}

/// Loop histogram of sector-shift invariant diagrams on `m` sectors of
/// length `v`, loops counted inside one sector.
pub fn m_linear_histogram(m: usize, d: usize, v: usize) -> Result<LoopHistogram> {
    check(d)?;
    if m == 0 {
        return Err(Error::InvalidArgument("sector count m must be >= 1".into()));
    }
    let points = m * v;
    bound("sector enumeration", points, SECTOR_BOUND)?;
    let counts = fold_partitions(
        points,
        d,
        || vec![0u64; v + 1],
        |acc, l| {
            if rotated(l, v) == l {
                acc[loops(l, Adjacency::Sectored(m)) / m] += 1;
            }
        },
        |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
    );
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k, BigInt::from(c)))
        .collect())
}

pub fn enumerate_m_linear(m: usize, d: usize, v: usize, k: usize) -> Result<ExactInt> {
    Ok(m_linear_histogram(m, d, v)?.remove(&k).unwrap_or_default())
}

/// Undirected Hamiltonian cycles of `K_{d,...,d}` with `n` parts.
pub fn hamiltonian_cycles_direct(d: usize, n: usize) -> Result<ExactInt> {
    check(d)?;
    let points = d * n;
    bound("Hamiltonian backtracking", points, HAMILTONIAN_BOUND)?;
    if points < 3 || n < 2 {
        return Ok(BigInt::from(0));
    }
    fn walk(at: usize, visited: u32, len: usize, points: usize, d: usize) -> u64 {
        if len == points {
            return u64::from(at / d != 0);
        }
        (0..points)
            .filter(|&w| visited & (1 << w) == 0 && w / d != at / d)
            .map(|w| walk(w, visited | (1 << w), len + 1, points, d))
            .sum()
    }
    let directed: u64 = (1..points)
        .into_par_iter()
        .filter(|&w| w / d != 0)
        .map(|w| walk(w, 1 | (1 << w), 2, points, d))
        .sum();
    Ok(BigInt::from(directed / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    fn hist(pairs: &[(usize, i64)]) -> LoopHistogram {
        pairs.iter().map(|&(k, c)| (k, big(c))).collect()
    }

    #[test]
    fn linear_histograms() {
        assert_eq!(enumerate_linear(2, 2).unwrap(), hist(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(
            enumerate_linear(3, 2).unwrap(),
            hist(&[(0, 1), (1, 2), (2, 4), (3, 2), (4, 1)])
        );
        assert_eq!(enumerate_linear(2, 0).unwrap(), hist(&[(0, 1)]));
    }

    #[test]
    fn chord_counts() {
        assert_eq!(enumerate_chord_loopless(2, 3).unwrap(), big(4));
        assert_eq!(enumerate_chord_loopless(3, 3).unwrap(), big(22));
        for d in 2..=6 {
            assert_eq!(enumerate_chord_loopless(d, 1).unwrap(), big(0));
        }
    }

    #[test]
    fn rotation_fixed_points() {
        assert_eq!(fixed_under_rotation(2, 3, 2).unwrap(), big(4));
        assert_eq!(fixed_under_rotation(2, 3, 6).unwrap(), big(1));
        assert_eq!(fixed_under_rotation(2, 3, 1).unwrap(), big(4));
        assert!(fixed_under_rotation(2, 3, 4).is_err());
    }

    #[test]
    fn reflection_fixed_points() {
        assert_eq!(fixed_under_reflection(2, 3, Axis::Edge).unwrap(), big(2));
        assert_eq!(fixed_under_reflection(2, 3, Axis::Vertex).unwrap(), big(2));
        assert_eq!(fixed_under_reflection(2, 2, Axis::Vertex).unwrap(), big(1));
        assert!(fixed_under_reflection(3, 3, Axis::Edge).is_err());
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_count(2, 3, Group::Cyclic).unwrap(), big(2));
        assert_eq!(orbit_count(2, 4, Group::Dihedral).unwrap(), big(7));
        assert_eq!(orbit_count(3, 3, Group::Dihedral).unwrap(), big(4));
    }

    #[test]
    fn sector_diagrams() {
        assert_eq!(enumerate_m_linear(1, 2, 6, 0).unwrap(), big(5));
        assert_eq!(enumerate_m_linear(3, 2, 0, 0).unwrap(), big(1));
        // {13,24} and {14,23}; the loop of the second straddles the cut
        assert_eq!(enumerate_m_linear(2, 2, 2, 0).unwrap(), big(2));
        assert_eq!(enumerate_m_linear(2, 4, 3, 0).unwrap(), big(0));
    }

    #[test]
    fn hamiltonian_cycles() {
        assert_eq!(hamiltonian_cycles_direct(2, 3).unwrap(), big(16));
        assert_eq!(hamiltonian_cycles_direct(2, 2).unwrap(), big(1));
        assert_eq!(hamiltonian_cycles_direct(3, 2).unwrap(), big(6));
        assert_eq!(hamiltonian_cycles_direct(2, 1).unwrap(), big(0));
    }

    #[test]
    fn size_bounds_are_enforced() {
        assert!(matches!(
            enumerate_linear(2, 8),
            Err(Error::OracleBound { points: 16, .. })
        ));
        assert!(orbit_count(2, 7, Group::Cyclic).is_err());
        assert!(hamiltonian_cycles_direct(3, 4).is_err());
    }

    #[test]
    fn diagram_blocks_are_canonical() {
        let all = diagrams(2, 2).unwrap();
        assert_eq!(all.len(), 3);
        let blocks: Vec<_> = all.iter().map(Diagram::blocks).collect();
        assert!(blocks.contains(&vec![vec![0, 2], vec![1, 3]]));
        for dg in &all {
            assert_eq!(dg.canonical(), *dg);
        }
        let dg = Diagram { d: 2, labels: vec![1, 0, 0, 1] };
        assert_eq!(dg.canonical().labels, vec![0, 1, 1, 0]);
        assert_eq!(dg.loops(Adjacency::Linear), 1);
        assert_eq!(dg.loops(Adjacency::Cyclic), 2);
        assert_eq!(dg.loops(Adjacency::Sectored(2)), 0);
    }
}
