//! Conjugation by the Pascal matrix `U` and the determinant formulas it
//! certifies.
//!
//! `U C~(n) U^-1` is lower bidiagonal with diagonal `i(n-i)` and
//! subdiagonal `(n+1-i)(1-i)`, so `det C` factors as
//! `prod_{i=1}^{n-1} (t - (n-1) - i(n-1-i))`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{build_c, build_ctilde, build_u, build_uinv, rat, RatMatrix};
use crate::oracle::{det_tridiagonal, TridiagonalSpec};
use crate::poly::{expand_product, Poly, ProductFactors};

/// Certified lower-bidiagonal conjugate of `C~(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidiagonalResult {
    pub n: usize,
    /// `diag[i-1]` is entry `(i, i)`.
    pub diag: Vec<BigInt>,
    /// `subdiag[i-1]` is entry `(i+1, i)`.
    pub subdiag: Vec<BigInt>,
    pub full: RatMatrix,
}

/// `U A U^-1` with `U^-1` taken from its closed form.
pub fn conjugate_by_u(a: &RatMatrix) -> RatMatrix {
    let n = a.n();
    build_u(n)
        .mul(a)
        .and_then(|ua| ua.mul(&build_uinv(n)))
        .expect("conformable by construction")
}

/// Conjugates `C~(n)` and checks every entry against the bidiagonal closed form.
pub fn triangularize_ctilde(n: usize) -> Result<BidiagonalResult> {
    if n < 1 {
        return Err(Error::OutOfRange { what: "n for C~", value: 0 });
    }
    let full = conjugate_by_u(&build_ctilde(n));
    let nn = n as i64;
    for (i, j, v) in full.entries() {
        let (ii, jj) = (i as i64, j as i64);
        let expected = if ii == jj {
            ii * (nn - ii)
        } else if ii == jj + 1 {
            (nn + 1 - ii) * (1 - ii)
        } else {
            0
        };
        if *v != rat(expected) {
            return Err(Error::StructureMismatch { row: i, col: j, expected: rat(expected), actual: v.clone() });
        }
    }
    let diag = (1..=n).map(|i| full.get(i, i).to_integer()).collect();
    let subdiag = (1..n).map(|i| full.get(i + 1, i).to_integer()).collect();
    Ok(BidiagonalResult { n, diag, subdiag, full })
}

/// Factored `det C`: roots `(n-1) + i(n-1-i)` for `i = 1..n-1`, merged.
pub fn nicer_product(n: usize) -> Result<ProductFactors> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n for det C", value: n as i64 });
    }
    let nn = n as i64;
    Ok((1..nn).map(|i| BigInt::from(nn - 1 + i * (nn - 1 - i))).collect())
}

/// The parity-split product form of `det C`, expanded.
///
/// For `n = 2r`: `(t-n+1) prod_{i=0}^{r-2} (t-n+1-r(r-1)+i(i+1))^2`.
/// For `n = 2r-1`: `(t-n+1)(t-n+1-(r-1)^2) prod_{i=1}^{r-2} (t-n+1-(r-1)^2+i^2)^2`.
/// Empty ranges contribute 1.
pub fn conjecture_formula(n: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n for det C", value: n as i64 });
    }
    let nn = n as i64;
    let base = Poly::linear(nn - 1);
    let square = |c: i64| {
        let f = Poly::linear(c);
        &f * &f
    };
    let mut out = base;
    if n % 2 == 0 {
        let r = nn / 2;
        for i in 0..=r - 2 {
            out = out * square(nn - 1 + r * (r - 1) - i * (i + 1));
        }
    } else {
        let r = (nn + 1) / 2;
        let shift = (r - 1) * (r - 1);
        out = out * Poly::linear(nn - 1 + shift);
        for i in 1..=r - 2 {
            out = out * square(nn - 1 + shift - i * i);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMismatch {
    /// Which route disagreed with the conjectured product.
    pub route: &'static str,
    pub expected: Poly,
    pub actual: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    /// The conjectured product, expanded.
    pub polynomial: Poly,
    pub mismatch: Option<PolyMismatch>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Three-way comparison: parity product, merged root product, and the
/// continuant determinant of `C`.
pub fn verify_conjecture(n: usize) -> Result<ConjectureReport> {
    let conj = conjecture_formula(n)?;
    let nicer = expand_product(&nicer_product(n)?);
    let oracle = det_tridiagonal(&TridiagonalSpec::from_matrix(&build_c(n)?)?);
    let mismatch = [("nicer-product", nicer), ("oracle-determinant", oracle)]
        .into_iter()
        .find(|(_, p)| *p != conj)
        .map(|(route, actual)| PolyMismatch { route, expected: conj.clone(), actual });
    Ok(ConjectureReport { n, polynomial: conj, mismatch })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub expected: num_rational::BigRational,
    pub actual: num_rational::BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowpartReport {
    pub conjugate: RatMatrix,
    pub mismatch: Option<EntryMismatch>,
}

impl LowpartReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Checks that conjugation by `U` leaves every entry with `i - j >= 1`
/// unchanged, for `m` vanishing two or more below the diagonal.
pub fn verify_lowpart(m: &RatMatrix) -> Result<LowpartReport> {
    if let Some((row, col, _)) = m.entries().find(|(i, j, v)| *i >= j + 2 && !v.is_zero()) {
        return Err(Error::NotLowerHessenberg { row, col });
    }
    let conjugate = conjugate_by_u(m);
    let mismatch = conjugate
        .entries()
        .find(|(i, j, v)| *i > *j && *v != m.get(*i, *j))
        .map(|(row, col, v)| EntryMismatch {
            row,
            col,
            expected: m.get(row, col).clone(),
            actual: v.clone(),
        });
    Ok(LowpartReport { conjugate, mismatch })
}

/// Characteristic polynomial read off the triangular form: `prod (t - i(n-i))`.
pub fn ctilde_eigen_product(n: usize) -> ProductFactors {
    let nn = n as i64;
    (1..=nn).map(|i| BigInt::from(i * (nn - i))).collect()
}
