//! Counting `n x n` nonnegative integer matrices whose rows and columns all
//! sum to `t` (lattice points of the `t`-th dilate of the Birkhoff polytope).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountQuery {
    pub n: usize,
    pub t: u32,
}

impl CountQuery {
    pub fn new(n: usize, t: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange { what: "matrix side", value: 0 });
        }
        Ok(CountQuery { n, t })
    }
}

pub const BRUTE_MAX_N: usize = 4;
pub const BRUTE_MAX_T: u32 = 6;

struct ColumnDp {
    n: usize,
    t: u32,
    memo: BTreeMap<(usize, Vec<u32>), BigInt>,
}

impl ColumnDp {
    /// Completions of columns `col..n` given the remaining row capacities.
    fn count(&mut self, col: usize, caps: &[u32]) -> BigInt {
        if col == self.n {
            return if caps.iter().all(|&c| c == 0) { BigInt::one() } else { BigInt::zero() };
        }
        let key = (col, caps.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        let mut column = vec![0u32; self.n];
        self.columns(col, caps, 0, self.t, &mut column, &mut total);
        self.memo.insert(key, total.clone());
        total
    }

    /// Enumerates column vectors `x <= caps` with `sum x = t`, row by row.
    fn columns(&mut self, col: usize, caps: &[u32], row: usize, left: u32, column: &mut Vec<u32>, total: &mut BigInt) {
        if row == self.n - 1 {
            if left > caps[row] {
                return;
            }
            column[row] = left;
            let next: Vec<u32> = caps.iter().zip(column.iter()).map(|(c, x)| c - x).collect();
            *total += self.count(col + 1, &next);
            return;
        }
        // what the remaining rows can still absorb
        let room: u32 = caps[row + 1..].iter().sum();
        let lo = left.saturating_sub(room);
        for x in lo..=left.min(caps[row]) {
            column[row] = x;
            self.columns(col, caps, row + 1, left - x, column, total);
        }
    }
}

/// Column-by-column dynamic programming over remaining row capacities.
pub fn count_dp(q: CountQuery) -> BigInt {
    let mut dp = ColumnDp { n: q.n, t: q.t, memo: BTreeMap::new() };
    dp.count(0, &vec![q.t; q.n])
}

/// Cell-by-cell exhaustive fill with row/column budgets; guarded to
/// `n <= 4`, `t <= 6`.
pub fn count_bruteforce(q: CountQuery) -> Result<BigInt> {
    if q.n > BRUTE_MAX_N || q.t > BRUTE_MAX_T {
        return Err(Error::LimitExceeded { n: q.n, t: q.t });
    }
    let n = q.n;
    let mut rows = vec![q.t; n];
    let mut cols = vec![q.t; n];
    Ok(BigInt::from(fill(n, 0, &mut rows, &mut cols)))
}

fn fill(n: usize, cell: usize, rows: &mut [u32], cols: &mut [u32]) -> u64 {
    if cell == n * n {
        return u64::from(rows.iter().chain(cols.iter()).all(|&x| x == 0));
    }
    let (i, j) = (cell / n, cell % n);
    let range = if j == n - 1 {
        // the last cell of a row must close it
        if rows[i] > cols[j] {
            return 0;
        }
        rows[i]..=rows[i]
    } else {
        0..=rows[i].min(cols[j])
    };
    let mut count = 0;
    for v in range {
        rows[i] -= v;
        cols[j] -= v;
        count += fill(n, cell + 1, rows, cols);
        rows[i] += v;
        cols[j] += v;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, t: u32) -> CountQuery {
        CountQuery::new(n, t).unwrap()
    }

    fn factorial(n: usize) -> BigInt {
        (1..=n).map(BigInt::from).product()
    }

    #[test]
    fn trivial_counts() {
        for n in 1..=6 {
            assert_eq!(count_dp(q(n, 0)), BigInt::one());
            assert_eq!(count_dp(q(n, 1)), factorial(n));
        }
        for t in 0..=30 {
            assert_eq!(count_dp(q(2, t)), BigInt::from(t + 1));
            assert_eq!(count_dp(q(1, t)), BigInt::one());
        }
    }

    #[test]
    fn brute_small() {
        assert_eq!(count_bruteforce(q(3, 2)).unwrap(), BigInt::from(21));
        assert_eq!(count_bruteforce(q(3, 1)).unwrap(), BigInt::from(6));
        assert_eq!(count_bruteforce(q(1, 5)).unwrap(), BigInt::one());
        assert_eq!(count_bruteforce(q(5, 1)), Err(Error::LimitExceeded { n: 5, t: 1 }));
        assert_eq!(count_bruteforce(q(2, 7)), Err(Error::LimitExceeded { n: 2, t: 7 }));
    }

    #[test]
    fn known_values() {
        // H_3(t) = binom(t+2, 2) + 3 binom(t+3, 4)
        for t in 0..10u32 {
            let t = t as i64;
            let h3 = (t + 2) * (t + 1) / 2 + 3 * ((t + 3) * (t + 2) * (t + 1) * t / 24);
            assert_eq!(count_dp(q(3, t as u32)), BigInt::from(h3));
        }
        // H_4(2) = 282
        assert_eq!(count_dp(q(4, 2)), BigInt::from(282));
    }

    #[test]
    fn zero_side_rejected() {
        assert!(CountQuery::new(0, 1).is_err());
    }
}
