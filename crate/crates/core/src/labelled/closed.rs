//! The closed system for `a_{n,k}`, `k = 0..d-1`.
//!
//! Only the low columns of the triangle are kept. Linear diagrams with
//! `1 <= k <= d-1` loops are split by how many cliques own the loops: a
//! single owner, or `l >= 2` owners described by a [`LoopPartition`].
//! The multi-owner term reads high columns `a_{n-l,m}` with `m >= d`,
//! which are recovered by running the triangle recurrence backwards
//! ([`eliminate_high_k`]).
//!
//! This path is a cross-check of [`LabelledTriangle`], not the main
//! computation.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{c_coeff, check_part_size, LabelledTriangle, RowSource};
use crate::error::{Error, Result};
use crate::exact::{binom, exact_div, factorial, loop_partitions, ExactInt, LoopPartition};

/// `a_{n,0}` from row `n-1`, columns `0..d-1`.
pub fn closed_a_n0(d: usize, n: usize, src: &impl RowSource) -> Result<ExactInt> {
    let (n, d) = (n as i64, d as i64);
    let mut acc = BigInt::zero();
    for t in 0..d {
        acc += c_coeff(n, 0, t, d) * src.entry(n - 1, t)?;
    }
    Ok(acc)
}

/// Linear diagrams whose `k` loops all belong to one clique.
pub fn closed_a_nk_single_owner(d: usize, n: usize, k: usize, src: &impl RowSource) -> Result<ExactInt> {
    if k == 0 || k >= d {
        return Err(Error::InvalidArgument(format!("single-owner term needs 1 <= k <= d-1 (k={k}, d={d})")));
    }
    let (n, d, k) = (n as i64, d as i64, k as i64);
    let mut acc = BigInt::zero();
    for m in 0..=(d - k) {
        acc += binom(d * (n - 1) + 1 - m, d - k - m) * src.entry(n - 1, m)?;
    }
    Ok(binom(d - 1, k) * acc)
}

/// Ways to re-insert the reduced cliques `K_{r_1}, ..., K_{r_l}` (in this
/// order) into a linear diagram with `n - l` cliques and `m` loops so that
/// the result is loopless.
///
/// Step `i` places `K_{r_i}` into `v_i` gaps of a diagram with `m_i` loops,
/// destroying `s_i` of them and forming `j_i` new ones; then
/// `m_{i+1} = m_i + j_i - s_i` and `v_{i+1} = v_i + r_i`, starting from
/// `m_1 = m`, `v_1 = d(n-l) + 1`. The last clique must destroy every
/// remaining loop and form none.
pub fn multi_owner_coefficient(d: usize, n: usize, partition: &LoopPartition, m: i64) -> ExactInt {
    fn step(sizes: &[i64], loops: i64, gaps: i64) -> ExactInt {
        let r = sizes[0];
        if sizes.len() == 1 {
            return binom(gaps - loops, r - loops);
        }
        let mut acc = BigInt::zero();
        for j in 0..r {
            let split = binom(r - 1, j);
            for s in 0..=loops.min(r - j) {
                let here = binom(loops, s) * binom(gaps - loops, r - j - s);
                if here.is_zero() {
                    continue;
                }
                acc += here * &split * step(&sizes[1..], loops + j - s, gaps + r);
            }
        }
        acc
    }

    let l = partition.len() as i64;
    if l == 0 || m < 0 {
        return BigInt::zero();
    }
    let sizes: Vec<i64> = partition.reduced_sizes.iter().map(|&r| r as i64).collect();
    step(&sizes, m, d as i64 * (n as i64 - l) + 1)
}

/// Linear diagrams whose `k` loops are spread over at least two cliques.
pub fn closed_a_nk_multi_owner(d: usize, n: usize, k: usize, src: &impl RowSource) -> Result<ExactInt> {
    if k == 0 || k >= d {
        return Err(Error::InvalidArgument(format!("multi-owner term needs 1 <= k <= d-1 (k={k}, d={d})")));
    }
    let mut total = BigInt::zero();
    for partition in loop_partitions(k, d, 2) {
        let l = partition.len();
        if l > n {
            continue;
        }
        // α_R: ways to grow each K_{r_i} back into K_d
        let alpha: ExactInt = partition
            .reduced_sizes
            .iter()
            .map(|&r| binom(d as i64 - 1, r as i64 - 1))
            .product();
        let mut beta = BigInt::one();
        for (_, count) in partition.multiplicities() {
            beta *= factorial(count as i64)?;
        }
        let mut inner = BigInt::zero();
        for m in 0..=((l * d - k) as i64) {
            let p = multi_owner_coefficient(d, n, &partition, m);
            if p.is_zero() {
                continue;
            }
            inner += p * src.entry((n - l) as i64, m)?;
        }
        total += exact_div(
            &(alpha * inner),
            &beta,
            &format!("multi-owner term R={:?} d={d} n={n} k={k}", partition.reduced_sizes),
        )?;
    }
    Ok(total)
}

/// Recovers `a_{n-1,k+d-1}` from `a_{n,k}` and lower columns of row `n-1`.
pub fn eliminate_high_k(d: usize, n: usize, k: usize, src: &impl RowSource) -> Result<ExactInt> {
    let (n, d, k) = (n as i64, d as i64, k as i64);
    let mut rest = src.entry(n, k)?;
    for t in (k - d + 1)..=(k + d - 2) {
        if t < 0 {
            continue;
        }
        rest -= c_coeff(n, k, t, d) * src.entry(n - 1, t)?;
    }
    let lead = c_coeff(n, k, k + d - 1, d);
    exact_div(&rest, &lead, &format!("eliminating a[{},{}] (d={d})", n - 1, k + d - 1))
}

/// Rows of `a_{n,k}` restricted to `k <= d-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSystemState {
    d: usize,
    low_rows: Vec<Vec<ExactInt>>,
}

impl ClosedSystemState {
    fn seed(d: usize) -> Self {
        let mut row0 = vec![BigInt::zero(); d];
        row0[0] = BigInt::one();
        ClosedSystemState { d, low_rows: vec![row0] }
    }

    /// Builds the closed system for any `d` from the single- and
    /// multi-owner terms, with high columns obtained by elimination.
    pub fn build(d: usize, n_max: usize) -> Result<Self> {
        check_part_size(d)?;
        let mut state = Self::seed(d);
        for n in 1..=n_max {
            let row = {
                let src = Eliminator::new(&state);
                let mut row = Vec::with_capacity(d);
                row.push(closed_a_n0(d, n, &src)?);
                for k in 1..d {
                    row.push(closed_a_nk_single_owner(d, n, k, &src)? + closed_a_nk_multi_owner(d, n, k, &src)?);
                }
                row
            };
            state.low_rows.push(row);
        }
        Ok(state)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.low_rows.len() - 1
    }

    pub fn low_rows(&self) -> &[Vec<ExactInt>] {
        &self.low_rows
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&ExactInt> {
        self.low_rows.get(n).and_then(|row| row.get(k))
    }

    /// First `(n, k)` where the state and the triangle disagree.
    pub fn first_divergence(&self, triangle: &LabelledTriangle) -> Option<(usize, usize)> {
        for (n, row) in self.low_rows.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                if *value != triangle.get(n as i64, k as i64) {
                    return Some((n, k));
                }
            }
        }
        None
    }
}

/// Serves low columns from a [`ClosedSystemState`] and high columns by
/// repeated elimination. High entries are memoized.
pub struct Eliminator<'a> {
    state: &'a ClosedSystemState,
    memo: RefCell<HashMap<(i64, i64), ExactInt>>,
}

impl<'a> Eliminator<'a> {
    pub fn new(state: &'a ClosedSystemState) -> Self {
        Eliminator {
            state,
            memo: RefCell::new(HashMap::new()),
        }
    }
}

impl RowSource for Eliminator<'_> {
    fn part_size(&self) -> usize {
        self.state.d
    }

    fn entry(&self, n: i64, k: i64) -> Result<ExactInt> {
        let d = self.state.d as i64;
        if n < 0 || k < 0 || k > n * (d - 1) {
            return Ok(BigInt::zero());
        }
        if n > self.state.n_max() as i64 {
            return Err(Error::InvalidArgument(format!("closed system has no row {n}")));
        }
        if k < d {
            return Ok(self.state.low_rows[n as usize][k as usize].clone());
        }
        if let Some(v) = self.memo.borrow().get(&(n, k)) {
            return Ok(v.clone());
        }
        let value = eliminate_high_k(self.state.d, (n + 1) as usize, (k - d + 1) as usize, self)?;
        self.memo.borrow_mut().insert((n, k), value.clone());
        Ok(value)
    }
}

/// The simplified closed systems for `d = 2` and `d = 3`, checked
/// against the full triangle.
pub fn closed_system_d2_d3(d: usize, n_max: usize) -> Result<ClosedSystemState> {
    let mut state = ClosedSystemState::seed(d);
    let a = |rows: &Vec<Vec<ExactInt>>, n: i64, k: usize| -> ExactInt {
        if n < 0 {
            BigInt::zero()
        } else {
            rows[n as usize][k].clone()
        }
    };
    match d {
        2 => {
            for n in 1..=n_max as i64 {
                let rows = &state.low_rows;
                // a_{n,0} = (2n-1) a_{n-1,0} + a_{n-2,0}, with a_{1,0} = 0
                let a0 = if n == 1 {
                    BigInt::zero()
                } else {
                    (2 * n - 1) * a(rows, n - 1, 0) + a(rows, n - 2, 0)
                };
                let a1 = (2 * n - 1) * a(rows, n - 1, 0) + a(rows, n - 1, 1);
                state.low_rows.push(vec![a0, a1]);
            }
        }
        3 => {
            for n in 1..=n_max as i64 {
                let rows = &state.low_rows;
                let a0 = binom(3 * n - 3, 2) * a(rows, n - 1, 0)
                    + (3 * n - 4) * a(rows, n - 1, 1)
                    + a(rows, n - 1, 2);
                let a1 = 2 * &a0 + 2 * (3 * n - 3) * a(rows, n - 1, 0) + 2 * a(rows, n - 1, 1);
                // the a_{n,2} relation holds from n = 2; row 1 is the single clique
                let a2 = if n == 1 {
                    BigInt::one()
                } else {
                    2 * &a0 + (9 * n - 10) * a(rows, n - 1, 0) + 5 * a(rows, n - 1, 1) + 2 * a(rows, n - 2, 0)
                };
                state.low_rows.push(vec![a0, a1, a2]);
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "simplified closed system exists only for d in {{2, 3}}, got {d}"
            )))
        }
    }
    let triangle = LabelledTriangle::build(d, n_max)?;
    if let Some((n, k)) = state.first_divergence(&triangle) {
        return Err(Error::Consistency(format!(
            "closed system for d={d} diverges from the triangle at a[{n},{k}]: {} vs {}",
            state.low_rows[n][k],
            triangle.get(n as i64, k as i64)
        )));
    }
    Ok(state)
}
