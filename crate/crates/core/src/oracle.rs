//! Reference determinants that never touch the Pascal conjugation.
//!
//! Two unrelated algorithms: the three-term continuant recurrence for
//! tridiagonal input, and fraction-free (Bareiss) elimination over `Z[t]`
//! for anything square.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, RatMatrix};
use crate::poly::Poly;

/// Band data of a tridiagonal matrix over `Z[t]`.
///
/// `sub[i]` sits at 1-based position `(i + 2, i + 1)` and `sup[i]` at
/// `(i + 1, i + 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagonalSpec {
    diag: Vec<Poly>,
    sub: Vec<Poly>,
    sup: Vec<Poly>,
}

impl TridiagonalSpec {
    pub fn new(diag: Vec<Poly>, sub: Vec<Poly>, sup: Vec<Poly>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::OutOfRange { what: "tridiagonal size", value: 0 });
        }
        for band in [&sub, &sup] {
            if band.len() != n - 1 {
                return Err(Error::DimensionMismatch { left: n - 1, right: band.len() });
            }
        }
        Ok(TridiagonalSpec { diag, sub, sup })
    }

    /// Reads the three bands off a matrix that must be tridiagonal.
    pub fn from_matrix(m: &PolyMatrix) -> Result<Self> {
        if let Some((i, j, _)) = m.entries().find(|(i, j, v)| i.abs_diff(*j) > 1 && !v.is_zero()) {
            return Err(Error::NotTridiagonal { row: i, col: j });
        }
        let n = m.n();
        TridiagonalSpec::new(
            (1..=n).map(|i| m.get(i, i).clone()).collect(),
            (1..n).map(|i| m.get(i + 1, i).clone()).collect(),
            (1..n).map(|i| m.get(i, i + 1).clone()).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn to_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.n(), |i, j| {
            if i == j {
                self.diag[i - 1].clone()
            } else if i == j + 1 {
                self.sub[j - 1].clone()
            } else if i + 1 == j {
                self.sup[i - 1].clone()
            } else {
                Poly::zero()
            }
        })
    }
}

/// Continuant recurrence `D_k = d_k D_{k-1} - sub_{k-1} sup_{k-1} D_{k-2}`.
pub fn det_tridiagonal(spec: &TridiagonalSpec) -> Poly {
    let mut prev = Poly::one();
    let mut cur = spec.diag[0].clone();
    for k in 1..spec.n() {
        let next = &(&spec.diag[k] * &cur) - &(&(&spec.sub[k - 1] * &spec.sup[k - 1]) * &prev);
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// Bareiss elimination over `Z[t]` with row pivoting.
///
/// Every division is checked to be exact; [`Error::InexactDivision`] means
/// an arithmetic bug, never bad input.
pub fn det_fraction_free(m: &PolyMatrix) -> Result<Poly> {
    let n = m.n();
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a: Vec<Vec<Poly>> = m.rows().map(|r| r.to_vec()).collect();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Poly::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = core::mem::take(&mut row[k]);
            for j in k + 1..n {
                let num = &(&row[j] * &pivot_row[k]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// `det(t I - m)` for a matrix with integer entries.
pub fn charpoly(m: &RatMatrix) -> Result<Poly> {
    det_fraction_free(&m.char_matrix()?)
}
