//! Labelled linear diagrams `a_{n,k}` and loopless chord diagrams `b_n`.
//!
//! A linear diagram on `n·d` points in a row is a partition of the points
//! into `n` blocks of size `d`; a loop is a pair of neighbouring points in
//! the same block. `a_{n,k}` counts linear diagrams with exactly `k`
//! loops. Cutting a loopless chord diagram between its last and first
//! point gives a loopless linear diagram, which is how `b_n` is obtained.

mod closed;

pub use closed::{
    closed_a_n0, closed_a_nk_multi_owner, closed_a_nk_single_owner, closed_system_d2_d3,
    eliminate_high_k, multi_owner_coefficient, ClosedSystemState, Eliminator,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom, ensure_nonnegative, exact_div, factorial, ExactInt};

/// Rejects part sizes below 2.
pub fn check_part_size(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::PartSize(d as i64));
    }
    Ok(())
}

/// Anything that can hand out `a_{n,k}` for one fixed `d`.
pub trait RowSource {
    fn part_size(&self) -> usize;
    fn entry(&self, n: i64, k: i64) -> Result<ExactInt>;
}

/// Transfer coefficient from `a_{n-1,t}` to `a_{n,k}`.
pub fn c_coeff(n: i64, k: i64, t: i64, d: i64) -> ExactInt {
    let mut acc = BigInt::zero();
    for i in 0..d {
        let choose_loops = binom(d - 1, i);
        let destroyed = binom(t, t + i - k);
        if destroyed.is_zero() {
            continue;
        }
        let free = binom(d * (n - 1) - t, d - 2 * i - t + k - 1);
        acc += choose_loops * destroyed * free;
    }
    acc
}

/// `(nd)! / ((d!)^n n!)`: all linear diagrams regardless of loops.
pub fn total_linear_diagrams(d: usize, n: usize) -> Result<ExactInt> {
    let denom = num_traits::pow(factorial(d as i64)?, n) * factorial(n as i64)?;
    exact_div(&factorial((n * d) as i64)?, &denom, "total linear diagrams")
}

pub fn build_triangle(d: usize, n_max: usize) -> Result<LabelledTriangle> {
    LabelledTriangle::build(d, n_max)
}

/// Memoized triangle `a_{n,k}` for `0 <= k <= n(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTriangle {
    d: usize,
    rows: Vec<Vec<ExactInt>>,
}

impl LabelledTriangle {
    pub fn build(d: usize, n_max: usize) -> Result<Self> {
        check_part_size(d)?;
        let mut tri = LabelledTriangle {
            d,
            rows: vec![vec![BigInt::one()]],
        };
        tri.extend_to(n_max)?;
        Ok(tri)
    }

    /// Rebuilds a triangle from stored rows, re-checking every row sum.
    pub fn from_rows(d: usize, rows: Vec<Vec<ExactInt>>) -> Result<Self> {
        check_part_size(d)?;
        if rows.is_empty() || rows[0] != vec![BigInt::one()] {
            return Err(Error::Consistency("row 0 must be [1]".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n * (d - 1) + 1 {
                return Err(Error::Consistency(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n * (d - 1) + 1
                )));
            }
            check_row_sum(d, n, row)?;
        }
        Ok(LabelledTriangle { d, rows })
    }

    pub fn extend_to(&mut self, n_max: usize) -> Result<()> {
        let d = self.d as i64;
        while self.n_max() < n_max {
            let n = self.rows.len() as i64;
            let width = n * (d - 1);
            let mut row = Vec::with_capacity(width as usize + 1);
            for k in 0..=width {
                let mut acc = BigInt::zero();
                for t in (k - d + 1)..=(k + d - 1) {
                    let prev = self.get(n - 1, t);
                    if prev.is_zero() {
                        continue;
                    }
                    acc += c_coeff(n, k, t, d) * prev;
                }
                row.push(ensure_nonnegative(acc, || format!("a[{n},{k}] (d={d})"))?);
            }
            check_row_sum(self.d, n as usize, &row)?;
            self.rows.push(row);
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `a_{n,k}`, zero outside the stored triangle.
    pub fn get(&self, n: i64, k: i64) -> ExactInt {
        if n < 0 || k < 0 {
            return BigInt::zero();
        }
        self.rows
            .get(n as usize)
            .and_then(|row| row.get(k as usize))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> Option<&[ExactInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.rows
    }
}

impl RowSource for LabelledTriangle {
    fn part_size(&self) -> usize {
        self.d
    }

    fn entry(&self, n: i64, k: i64) -> Result<ExactInt> {
        if n > self.n_max() as i64 {
            return Err(Error::InvalidArgument(format!(
                "triangle for d={} only covers n <= {}, asked for row {n}",
                self.d,
                self.n_max()
            )));
        }
        Ok(self.get(n, k))
    }
}

fn check_row_sum(d: usize, n: usize, row: &[ExactInt]) -> Result<()> {
    let sum: ExactInt = row.iter().sum();
    let expected = total_linear_diagrams(d, n)?;
    if sum != expected {
        return Err(Error::Consistency(format!(
            "row sum of a[{n},*] for d={d} is {sum}, expected {expected}"
        )));
    }
    Ok(())
}

/// Which closing formula is used for `b_n`.
///
/// `PrintedD3Display` reproduces the sign of the `a_{n-1,1}` term as it
/// appears in the `d = 3` display of the source derivation. It is wrong
/// (it gives `b_3 = 26` instead of 22) and exists only so that the
/// verification suite can show that the sign matters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClosingFormula {
    #[default]
    General,
    PrintedD3Display,
}

/// Loopless chord diagrams `b_n` from rows `n` and `n-1` of the triangle.
pub fn b_labelled(d: usize, n: usize, triangle: &LabelledTriangle) -> Result<ExactInt> {
    b_labelled_with(d, n, triangle, ClosingFormula::General)
}

pub fn b_labelled_with(
    d: usize,
    n: usize,
    triangle: &LabelledTriangle,
    formula: ClosingFormula,
) -> Result<ExactInt> {
    check_part_size(d)?;
    if triangle.d() != d {
        return Err(Error::InvalidArgument(format!(
            "triangle is for d={}, asked for d={d}",
            triangle.d()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("b_n needs n >= 1".into()));
    }
    let (dn, di) = (n as i64, d as i64);
    let mut acc = triangle.entry(dn, 0)?;
    for k in 0..=(di - 2) {
        let term = binom(di * (dn - 1) - k - 1, di - 2 - k) * triangle.entry(dn - 1, k)?;
        if formula == ClosingFormula::PrintedD3Display && d == 3 && k == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    ensure_nonnegative(acc, || format!("b_{n} for d={d}"))
}
