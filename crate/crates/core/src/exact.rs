//! Exact integer helpers shared by every counting module.
//!
//! All counts are [`ExactInt`] values. Binomials follow a strict zero
//! convention: `C(a, b) = 0` whenever `a < 0`, `b < 0` or `b > a`. The
//! generalized signed binomial is never used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Unbounded signed integer used for every counted quantity.
pub type ExactInt = BigInt;

/// `C(a, b)` under the zero convention.
pub fn binom(a: i64, b: i64) -> ExactInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        // acc is C(a, i + 1) after this division, so it is always exact
        acc /= i + 1;
    }
    acc
}

/// Multichoose `<<a, b>> = C(a + b - 1, b)`, with the same zero convention.
pub fn multichoose(a: i64, b: i64) -> ExactInt {
    binom(a + b - 1, b)
}

pub fn factorial(a: i64) -> Result<ExactInt> {
    if a < 0 {
        return Err(Error::InvalidArgument(format!("factorial of negative {a}")));
    }
    Ok((1..=a).fold(BigInt::one(), |acc, i| acc * i))
}

/// Falling factorial `a (a-1) ... (a-k+1)`; `k <= 0` gives 1.
pub fn falling(a: i64, k: i64) -> ExactInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (a - i))
}

/// `dividend / divisor`, failing unless the division is exact.
pub fn exact_div(dividend: &ExactInt, divisor: &ExactInt, context: &str) -> Result<ExactInt> {
    if divisor.is_zero() {
        return Err(Error::InexactDivision {
            dividend: dividend.to_string(),
            divisor: "0".into(),
            context: context.into(),
        });
    }
    let (q, r) = dividend.div_rem(divisor);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            dividend: dividend.to_string(),
            divisor: divisor.to_string(),
            context: context.into(),
        });
    }
    Ok(q)
}

/// Fails with [`Error::NegativeCount`] when `value < 0`.
pub fn ensure_nonnegative(value: ExactInt, context: impl FnOnce() -> String) -> Result<ExactInt> {
    if value.is_negative() {
        return Err(Error::NegativeCount {
            value: value.to_string(),
            context: context(),
        });
    }
    Ok(value)
}

/// Multinomial `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[i64]) -> Result<ExactInt> {
    let total: i64 = parts.iter().sum();
    let mut acc = BigInt::one();
    let mut used = 0;
    for &p in parts {
        if p < 0 {
            return Err(Error::InvalidArgument(format!("negative multinomial part {p}")));
        }
        used += p;
        acc *= binom(used, p);
    }
    debug_assert_eq!(used, total);
    Ok(acc)
}

pub fn totient(m: u64) -> Result<u64> {
    if m < 1 {
        return Err(Error::InvalidArgument("totient of 0".into()));
    }
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

/// Divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    if m < 1 {
        return Err(Error::InvalidArgument("divisors of 0".into()));
    }
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m % i == 0 {
            low.push(i);
            if i != m / i {
                high.push(m / i);
            }
        }
        i += 1;
    }
    low.extend(high.into_iter().rev());
    Ok(low)
}

/// A nondecreasing multiset `r_1 <= ... <= r_l` with `1 <= r_i <= d-1`.
///
/// Clique `i` owns `d - r_i` loops; contracting those loops leaves a
/// clique with `r_i` points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopPartition {
    pub d: usize,
    pub reduced_sizes: Vec<usize>,
}

impl LoopPartition {
    pub fn len(&self) -> usize {
        self.reduced_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced_sizes.is_empty()
    }

    pub fn total_loops(&self) -> usize {
        self.reduced_sizes.iter().map(|r| self.d - r).sum()
    }

    pub fn loops_per_clique(&self) -> Vec<usize> {
        self.reduced_sizes.iter().map(|r| self.d - r).collect()
    }

    /// `(u, β_u)` for every reduced size `u` present, ascending in `u`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &r in &self.reduced_sizes {
            match out.last_mut() {
                Some((u, count)) if *u == r => *count += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }
}

/// All multisets `R` with `Σ (d - r_i) = k` and `l_min <= |R| <= k`.
pub fn loop_partitions(k: usize, d: usize, l_min: usize) -> Vec<LoopPartition> {
    fn extend(
        d: usize,
        remaining: usize,
        min_r: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        // r >= min_r keeps the multiset nondecreasing; loops per clique are d - r
        for r in min_r..d {
            let loops = d - r;
            if loops > remaining {
                continue;
            }
            current.push(r);
            extend(d, remaining - loops, r, current, out);
            current.pop();
        }
    }

    if d < 2 || k == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    extend(d, k, 1, &mut Vec::new(), &mut raw);
    let mut parts: Vec<LoopPartition> = raw
        .into_iter()
        .filter(|sizes| sizes.len() >= l_min.max(1) && sizes.len() <= k)
        .map(|reduced_sizes| LoopPartition { d, reduced_sizes })
        .collect();
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    parts
}
