//! Dense square matrices over exact rings, and constructors for the named
//! matrices of the tridiagonal family.
//!
//! All public indices are 1-based: `m.get(1, 1)` is the top-left entry.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binom::choose;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Exact ring element usable as a matrix entry.
pub trait Entry: Clone + PartialEq + Zero + One + fmt::Debug {
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn add_ref(&mut self, rhs: &Self);
    fn sub_ref(&mut self, rhs: &Self);
}

impl Entry for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

impl Entry for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

impl Entry for Poly {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<BigRational>;
pub type PolyMatrix = Matrix<Poly>;

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

impl<T> Matrix<T> {
    /// Builds an `n x n` matrix from `f(i, j)` with 1-based indices.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// Row-major construction; every row must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index ({i},{j}) outside 1..={}", self.n);
        &self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index ({i},{j}) outside 1..={}", self.n);
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    /// Rows as slices, top to bottom.
    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Entries with 1-based coordinates, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let n = self.n;
        self.data.iter().enumerate().map(move |(k, v)| (k / n + 1, k % n + 1, v))
    }
}

impl<T: Entry> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scalar(n: usize, c: T) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { c.clone() } else { T::zero() })
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let n = self.n;
        let mut out = Matrix::<T>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            a.add_ref(b);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            a.sub_ref(b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|a| a.mul_ref(c))
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 1..=self.n {
            acc.add_ref(self.get(i, i));
        }
        acc
    }

    /// `[[self, 0], [0, 1]]`.
    pub fn block_diag_one(&self) -> Matrix<T> {
        let n = self.n;
        Matrix::from_fn(n + 1, |i, j| {
            if i <= n && j <= n {
                self.get(i, j).clone()
            } else if i == j {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> Matrix<T> {
        assert!(k <= self.n);
        Matrix::from_fn(k, |i, j| self.get(i, j).clone())
    }

    /// Every entry strictly above the diagonal is zero.
    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(i, j, v)| j <= i || v.is_zero())
    }

    /// Lower triangular with nothing below the first subdiagonal.
    pub fn is_lower_bidiagonal(&self) -> bool {
        self.entries().all(|(i, j, v)| (j <= i && i <= j + 1) || v.is_zero())
    }

    pub fn is_tridiagonal(&self) -> bool {
        self.entries().all(|(i, j, v)| i.abs_diff(j) <= 1 || v.is_zero())
    }
}

impl RatMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<RatMatrix> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Lifts integer entries to constant polynomials.
    pub fn to_poly(&self) -> Result<PolyMatrix> {
        let mut out = Vec::with_capacity(self.data.len());
        for (i, j, v) in self.entries() {
            if !v.is_integer() {
                return Err(Error::NotIntegral { row: i, col: j });
            }
            out.push(Poly::constant(v.to_integer()));
        }
        Ok(Matrix { n: self.n, data: out })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    /// Rational times polynomial matrix; the rational side must be integral.
    pub fn mul_poly(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.to_poly()?.mul(rhs)
    }

    /// `t I - self`.
    pub fn char_matrix(&self) -> Result<PolyMatrix> {
        let lifted = self.to_poly()?;
        PolyMatrix::scalar(self.n, Poly::t()).sub(&lifted)
    }
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub(crate) fn rat_big(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// The `(n-1) x (n-1)` matrix `C` whose determinant is the product formula.
///
/// Diagonal `t - (n - 2i + 2)(n - 1 - i) - 1`, subdiagonal `(i-1)(n-i)` at
/// `(i, i-1)`, superdiagonal `-(n-1-i)(n-i)` at `(i, i+1)`.
pub fn build_c(n: usize) -> Result<PolyMatrix> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n for C", value: n as i64 });
    }
    let nn = n as i64;
    Ok(Matrix::from_fn(n - 1, |i, j| {
        let (ii, jj) = (i as i64, j as i64);
        if ii == jj {
            Poly::linear((nn - 2 * ii + 2) * (nn - 1 - ii) + 1)
        } else if ii == jj + 1 {
            Poly::constant((ii - 1) * (nn - ii))
        } else if ii + 1 == jj {
            Poly::constant(-(nn - 1 - ii) * (nn - ii))
        } else {
            Poly::zero()
        }
    }))
}

/// The `n x n` tridiagonal matrix `C~(n)` with diagonal `(n+1-i)(n+1-2i)`,
/// subdiagonal `(n+1-i)(1-i)` and superdiagonal `(n+1-i)(n-i)`.
///
/// # Panics
/// If `n == 0`.
pub fn build_ctilde(n: usize) -> RatMatrix {
    assert!(n >= 1, "n must be positive");
    let nn = n as i64;
    Matrix::from_fn(n, |i, j| {
        let (ii, jj) = (i as i64, j as i64);
        let v = if ii == jj {
            (nn + 1 - ii) * (nn + 1 - 2 * ii)
        } else if ii == jj + 1 {
            (nn + 1 - ii) * (1 - ii)
        } else if ii + 1 == jj {
            (nn + 1 - ii) * (nn - ii)
        } else {
            0
        };
        rat(v)
    })
}

/// Pascal-type upper unitriangular `U` with `U[i][j] = binom(n-i, n-j)`.
///
/// # Panics
/// If `n == 0`.
pub fn build_u(n: usize) -> RatMatrix {
    assert!(n >= 1, "n must be positive");
    Matrix::from_fn(n, |i, j| rat_big(choose((n - i) as u64, n as i64 - j as i64)))
}

/// Closed-form inverse of [`build_u`]: entries `(-1)^(i+j) binom(n-i, n-j)`.
///
/// # Panics
/// If `n == 0`.
pub fn build_uinv(n: usize) -> RatMatrix {
    assert!(n >= 1, "n must be positive");
    Matrix::from_fn(n, |i, j| {
        let c = choose((n - i) as u64, n as i64 - j as i64);
        rat_big(if (i + j) % 2 == 0 { c } else { -c })
    })
}

/// `U1 = binom(n-1-i, n-1-j)`, the `(n-1) x (n-1)` Pascal matrix.
pub fn build_u1(n: usize) -> Result<RatMatrix> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n for U1", value: n as i64 });
    }
    Ok(Matrix::from_fn(n - 1, |i, j| rat_big(choose((n - 1 - i) as u64, n as i64 - 1 - j as i64))))
}

/// Columns `f_1 = e_1`, `f_j = e_{j-1} + e_j`.
///
/// # Panics
/// If `n == 0`.
pub fn build_p(n: usize) -> RatMatrix {
    assert!(n >= 1, "n must be positive");
    Matrix::from_fn(n, |i, j| if i == j || i + 1 == j { rat(1) } else { rat(0) })
}

/// Columns `g_j = sum_{i <= j} (-1)^(i+j) e_i`.
///
/// # Panics
/// If `n == 0`.
pub fn build_q(n: usize) -> RatMatrix {
    assert!(n >= 1, "n must be positive");
    Matrix::from_fn(n, |i, j| {
        if i > j {
            rat(0)
        } else if (i + j) % 2 == 0 {
            rat(1)
        } else {
            rat(-1)
        }
    })
}
