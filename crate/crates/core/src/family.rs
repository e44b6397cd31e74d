//! Generalized banded families `A = r I + (b, a^(1), ..., a^(n-1))` whose
//! Pascal conjugate is lower bidiagonal.
//!
//! A family qualifies when, for each `k`, the alternating binomial
//! combination returned by [`condition_lhs`] is the same number `lambda(k)`
//! for every row `i`. The conjugate then has diagonal
//! `r + sum_{k=0}^{n-i-1} lambda(k)` and keeps `b` on the subdiagonal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binom::choose_i;
use crate::error::{Error, Result};
use crate::matrix::{build_p, build_q, rat, rat_big, RatMatrix};
use crate::triangulate::conjugate_by_u;

pub mod generate;

/// Band data of a generalized family.
///
/// `b[i-1]` holds `b_i` and `a[&s][i-1]` holds `a_i^(s)`. Accessors
/// zero-extend outside the stored support, with one exception: `b_{n+1}`
/// reads `b_next`, which is zero unless the family came out of
/// [`eliminate_step`] (there it keeps the parent's `b_n`, the value the
/// reduced condition refers to in its last row).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    n: usize,
    r: BigRational,
    b: Vec<BigRational>,
    a: BTreeMap<usize, Vec<BigRational>>,
    b_next: BigRational,
}

impl FamilySpec {
    /// Validates: `n >= 1`, `b` has length `n` with `b_1 = 0`, band indices
    /// in `1..=n-1`, each band of length `n` with `a_i^(s) = 0` once `i + s > n`.
    pub fn new(n: usize, r: BigRational, b: Vec<BigRational>, a: BTreeMap<usize, Vec<BigRational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFamily("n must be positive".into()));
        }
        if b.len() != n {
            return Err(Error::InvalidFamily(format!("b has length {}, expected {n}", b.len())));
        }
        if !b[0].is_zero() {
            return Err(Error::InvalidFamily(format!("b_1 must be 0, got {}", b[0])));
        }
        for (&s, band) in &a {
            if s == 0 || s >= n {
                return Err(Error::InvalidFamily(format!("band index {s} outside 1..={}", n - 1)));
            }
            if band.len() != n {
                return Err(Error::InvalidFamily(format!("band {s} has length {}, expected {n}", band.len())));
            }
            if let Some(i) = (n - s + 1..=n).find(|&i| !band[i - 1].is_zero()) {
                return Err(Error::InvalidFamily(format!("a_{i}^({s}) must vanish since {i} + {s} > {n}")));
            }
        }
        Ok(FamilySpec { n, r, b, a, b_next: BigRational::zero() })
    }

    /// All sequences zero.
    pub fn zero(n: usize, r: BigRational) -> Self {
        assert!(n >= 1);
        FamilySpec { n, r, b: alloc::vec![BigRational::zero(); n], a: BTreeMap::new(), b_next: BigRational::zero() }
    }

    /// The tridiagonal family that reproduces `C~(n)` at `r = 0`:
    /// `b_i = (n+1-i)(1-i)`, `a_i^(1) = (n+1-i)(n-i)`.
    pub fn reference(n: usize) -> Self {
        assert!(n >= 1);
        let nn = n as i64;
        let b = (1..=nn).map(|i| rat((nn + 1 - i) * (1 - i))).collect();
        let mut a = BTreeMap::new();
        if n >= 2 {
            a.insert(1, (1..=nn).map(|i| rat((nn + 1 - i) * (nn - i))).collect());
        }
        FamilySpec { n, r: BigRational::zero(), b, a, b_next: BigRational::zero() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn with_r(mut self, r: BigRational) -> Self {
        self.r = r;
        self
    }

    /// Sets the value read for `b_{n+1}`.
    pub fn with_b_next(mut self, v: BigRational) -> Self {
        self.b_next = v;
        self
    }

    pub fn b_next(&self) -> &BigRational {
        &self.b_next
    }

    pub fn b_seq(&self) -> &[BigRational] {
        &self.b
    }

    pub fn bands(&self) -> &BTreeMap<usize, Vec<BigRational>> {
        &self.a
    }

    /// `b_i`, zero for `i <= 1` or `i > n + 1`; `b_{n+1}` is [`Self::b_next`].
    pub fn b(&self, i: i64) -> BigRational {
        let n = self.n as i64;
        if i == n + 1 {
            return self.b_next.clone();
        }
        if i <= 1 || i > n {
            return BigRational::zero();
        }
        self.b[i as usize - 1].clone()
    }

    /// `a_i^(s)`, zero for `i <= 0`, `i + s > n`, or an absent band.
    pub fn a(&self, s: usize, i: i64) -> BigRational {
        if i <= 0 || i + s as i64 > self.n as i64 {
            return BigRational::zero();
        }
        self.a.get(&s).map(|band| band[i as usize - 1].clone()).unwrap_or_default()
    }

    /// True when every band beyond the first is identically zero.
    pub fn only_first_band(&self) -> bool {
        self.a.iter().all(|(&s, band)| s == 1 || band.iter().all(Zero::is_zero))
    }

    /// `alpha * self + beta * other`, including `r`.
    pub fn combine(&self, alpha: &BigRational, other: &FamilySpec, beta: &BigRational) -> Result<FamilySpec> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let lin = |x: &BigRational, y: &BigRational| alpha * x + beta * y;
        let b = self.b.iter().zip(&other.b).map(|(x, y)| lin(x, y)).collect();
        let mut a = BTreeMap::new();
        for s in self.a.keys().chain(other.a.keys()) {
            if a.contains_key(s) {
                continue;
            }
            let band = (1..=self.n as i64).map(|i| lin(&self.a(*s, i), &other.a(*s, i))).collect();
            a.insert(*s, band);
        }
        Ok(FamilySpec::new(self.n, lin(&self.r, &other.r), b, a)?.with_b_next(lin(&self.b_next, &other.b_next)))
    }
}

/// Certified constants `lambda(0), ..., lambda(n-2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaVector(Vec<BigRational>);

impl LambdaVector {
    pub fn new(values: Vec<BigRational>) -> Self {
        LambdaVector(values)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum_{k=0}^{m-1} lambda(k)`.
    pub fn prefix_sum(&self, m: usize) -> BigRational {
        self.0.iter().take(m).fold(BigRational::zero(), |acc, x| acc + x)
    }
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Left-hand side of the row-independence condition at row `i`, level `k`:
///
/// ```text
/// b_{i+1} - b_i
///   + sum_{t=1}^{n-1} sum_{l=0}^{t-1} (-1)^{l+t} binom(t-l+k, t-1)   binom(t-1, l) a_{i+1-l+k}^(t)
///   - sum_{t=1}^{n-1} sum_{l=0}^{t-1} (-1)^{l+t} binom(t-1-l+k, t-1) binom(t-1, l) a_{i-l+k}^(t)
/// ```
pub fn condition_lhs(spec: &FamilySpec, i: usize, k: usize) -> Result<BigRational> {
    let n = spec.n;
    if n < 2 || k > n - 2 {
        return Err(Error::OutOfRange { what: "condition level k", value: k as i64 });
    }
    if i < 1 || i > n - k {
        return Err(Error::OutOfRange { what: "condition row i", value: i as i64 });
    }
    let (ii, kk) = (i as i64, k as i64);
    let mut acc = spec.b(ii + 1) - spec.b(ii);
    for &t in spec.a.keys() {
        let tt = t as i64;
        for l in 0..tt {
            let weight = sign(l + tt) * rat_big(choose_i(tt - 1, l));
            let hi = spec.a(t, ii + 1 - l + kk);
            let lo = spec.a(t, ii - l + kk);
            if !hi.is_zero() {
                acc += &weight * rat_big(choose_i(tt - l + kk, tt - 1)) * hi;
            }
            if !lo.is_zero() {
                acc -= &weight * rat_big(choose_i(tt - 1 - l + kk, tt - 1)) * lo;
            }
        }
    }
    Ok(acc)
}

/// Takes row 1 as the candidate `lambda(k)` and checks every other row.
pub fn compute_lambda(spec: &FamilySpec) -> Result<LambdaVector> {
    let n = spec.n;
    let mut values = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let candidate = condition_lhs(spec, 1, k)?;
        for i in 2..=n - k {
            let v = condition_lhs(spec, i, k)?;
            if v != candidate {
                return Err(Error::NotConstant { k, i, expected: candidate, actual: v });
            }
        }
        values.push(candidate);
    }
    Ok(LambdaVector(values))
}

/// The banded matrix: diagonal `r + b_i + sum_t (-1)^(t-1) a_i^(t)`,
/// `b_i` at `(i, i-1)` and `a_i^(t)` at `(i, i+t)`.
pub fn build_a(spec: &FamilySpec) -> RatMatrix {
    let n = spec.n;
    RatMatrix::from_fn(n, |i, j| {
        let ii = i as i64;
        if i == j {
            let mut d = &spec.r + spec.b(ii);
            for &t in spec.a.keys() {
                d += sign(t as i64 - 1) * spec.a(t, ii);
            }
            d
        } else if i == j + 1 {
            spec.b(ii)
        } else if j > i {
            spec.a(j - i, ii)
        } else {
            BigRational::zero()
        }
    })
}

/// Lower bidiagonal matrix with diagonal `r + sum_{k=0}^{n-i-1} lambda(k)`
/// and `b_i` at `(i, i-1)`.
pub fn predicted_conjugate(spec: &FamilySpec, lambda: &LambdaVector) -> Result<RatMatrix> {
    let n = spec.n;
    if lambda.len() != n - 1 {
        return Err(Error::DimensionMismatch { left: n - 1, right: lambda.len() });
    }
    Ok(RatMatrix::from_fn(n, |i, j| {
        if i == j {
            &spec.r + lambda.prefix_sum(n - i)
        } else if i == j + 1 {
            spec.b(i as i64)
        } else {
            BigRational::zero()
        }
    }))
}

/// Outcome of a successful family verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub lambda: LambdaVector,
    pub conjugate: RatMatrix,
    /// Whether the single-band closed form for the diagonal was also checked.
    pub single_band_checked: bool,
}

/// Certifies lambda, conjugates `A` exactly and compares with the predicted
/// bidiagonal form. For single-band families the diagonal is additionally
/// compared with `r + a_i^(1) + (n-i)(b_{i+1} - b_i)`.
pub fn verify_family(spec: &FamilySpec) -> Result<FamilyReport> {
    let lambda = compute_lambda(spec)?;
    let conjugate = conjugate_by_u(&build_a(spec));
    let predicted = predicted_conjugate(spec, &lambda)?;
    first_difference(&predicted, &conjugate).map_or(Ok(()), Err)?;
    let single_band_checked = spec.only_first_band();
    if single_band_checked {
        let n = spec.n as i64;
        for i in 1..=n {
            let expected = &spec.r + spec.a(1, i) + rat(n - i) * (spec.b(i + 1) - spec.b(i));
            let actual = conjugate.get(i as usize, i as usize);
            if *actual != expected {
                return Err(Error::StructureMismatch {
                    row: i as usize,
                    col: i as usize,
                    expected,
                    actual: actual.clone(),
                });
            }
        }
    }
    Ok(FamilyReport { lambda, conjugate, single_band_checked })
}

fn first_difference(expected: &RatMatrix, actual: &RatMatrix) -> Option<Error> {
    expected
        .entries()
        .zip(actual.entries())
        .find(|((_, _, e), (_, _, a))| e != a)
        .map(|((row, col, e), (_, _, a))| Error::StructureMismatch {
            row,
            col,
            expected: e.clone(),
            actual: a.clone(),
        })
}

/// The new upper bands produced by one elimination step:
///
/// `c_i^(s) = (-1)^s ( sum_{t=s+1}^{n-1} (-1)^(t-1) a_i^(t) - sum_{t=s}^{n-1} (-1)^(t-1) a_{i+1}^(t) )`
///
/// for `s = 1..=n-2` and `i = 1..=n-1`. Returned bands have length `n - 1`.
pub fn compute_c(spec: &FamilySpec) -> Result<BTreeMap<usize, Vec<BigRational>>> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::OutOfRange { what: "n for elimination", value: n as i64 });
    }
    let mut out = BTreeMap::new();
    for s in 1..=n - 2 {
        let mut band = Vec::with_capacity(n - 1);
        for i in 1..=(n - 1) as i64 {
            let mut first = BigRational::zero();
            for t in s + 1..n {
                first += sign(t as i64 - 1) * spec.a(t, i);
            }
            let mut second = BigRational::zero();
            for t in s..n {
                second += sign(t as i64 - 1) * spec.a(t, i + 1);
            }
            let c = sign(s as i64) * (first - second);
            if s as i64 + i > n as i64 - 1 && !c.is_zero() {
                return Err(Error::StructureMismatch {
                    row: i as usize,
                    col: i as usize + s,
                    expected: BigRational::zero(),
                    actual: c,
                });
            }
            band.push(c);
        }
        out.insert(s, band);
    }
    Ok(out)
}

/// Result of one `P A Q` reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Top-left `(n-1) x (n-1)` block of `P A Q`.
    pub a1: RatMatrix,
    /// Bottom row of `P A Q` without its last entry: `(0, ..., 0, b_n)`.
    pub b_row: Vec<BigRational>,
    /// Size `n - 1` family with `b` truncated, bands `c`, the same `r`,
    /// and `b_next` set to the parent's `b_n`.
    ///
    /// For a family that passes [`compute_lambda`], `build_a(subfamily)`
    /// equals `a1 - lambda(0) I` and the subfamily passes with
    /// `lambda'(k) = lambda(k + 1)`.
    pub subfamily: FamilySpec,
}

/// Column then row operations (`P A Q`), checked against the block form
/// `[[A1, 0], [B, r]]` and against the closed-form entries of `A1`.
pub fn eliminate_step(spec: &FamilySpec) -> Result<Elimination> {
    let n = spec.n;
    let c = compute_c(spec)?;
    let paq = build_p(n)
        .mul(&build_a(spec))
        .and_then(|pa| pa.mul(&build_q(n)))?;
    let block_err = |row: usize, col: usize, expected: BigRational| Error::BlockMismatch {
        row,
        col,
        expected,
        actual: paq.get(row, col).clone(),
    };
    for i in 1..n {
        if !paq.get(i, n).is_zero() {
            return Err(block_err(i, n, BigRational::zero()));
        }
    }
    let b_row: Vec<BigRational> = (1..n).map(|j| paq.get(n, j).clone()).collect();
    for j in 1..n {
        let expected = if j == n - 1 { spec.b(n as i64) } else { BigRational::zero() };
        if b_row[j - 1] != expected {
            return Err(block_err(n, j, expected));
        }
    }
    if *paq.get(n, n) != spec.r {
        return Err(block_err(n, n, spec.r.clone()));
    }
    let a1 = paq.leading(n - 1);
    for (i, j, v) in a1.entries() {
        let ii = i as i64;
        let expected = if i == j {
            let mut d = &spec.r + spec.b(ii + 1);
            for &t in spec.a.keys() {
                d += sign(t as i64 - 1) * spec.a(t, ii);
            }
            d
        } else if i == j + 1 {
            spec.b(ii)
        } else if j > i {
            c[&(j - i)][i - 1].clone()
        } else {
            BigRational::zero()
        };
        if *v != expected {
            return Err(block_err(i, j, expected));
        }
    }
    let bands = c.into_iter().filter(|(_, band)| band.iter().any(|x| !x.is_zero())).collect();
    let subfamily =
        FamilySpec::new(n - 1, spec.r.clone(), spec.b[..n - 1].to_vec(), bands)?.with_b_next(spec.b(n as i64));
    Ok(Elimination { a1, b_row, subfamily })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::build_ctilde;

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn validation() {
        let bad_b1 = FamilySpec::new(3, rat(0), rats(&[1, 0, 0]), BTreeMap::new());
        assert!(matches!(bad_b1, Err(Error::InvalidFamily(_))));
        let mut a = BTreeMap::new();
        a.insert(2, rats(&[0, 1, 0]));
        assert!(FamilySpec::new(3, rat(0), rats(&[0, 0, 0]), a).is_err());
        let mut a = BTreeMap::new();
        a.insert(3, rats(&[0, 0, 0]));
        assert!(FamilySpec::new(3, rat(0), rats(&[0, 0, 0]), a).is_err());
        assert!(FamilySpec::new(3, rat(0), rats(&[0, 0]), BTreeMap::new()).is_err());
    }

    #[test]
    fn zero_extension() {
        let f = FamilySpec::reference(4);
        assert_eq!(f.b(0), rat(0));
        assert_eq!(f.b(5), rat(0));
        assert_eq!(f.b(2), rat(-3));
        assert_eq!(f.a(1, 0), rat(0));
        assert_eq!(f.a(1, 4), rat(0));
        assert_eq!(f.a(1, 1), rat(12));
        assert_eq!(f.a(2, 1), rat(0));
    }

    #[test]
    fn lhs_examples() {
        let f = FamilySpec::reference(4);
        assert_eq!(condition_lhs(&f, 1, 0).unwrap(), rat(3));
        for i in 1..=3 {
            assert_eq!(condition_lhs(&f, i, 1).unwrap(), rat(1));
        }
        let z = FamilySpec::zero(4, rat(2));
        assert_eq!(condition_lhs(&z, 2, 1).unwrap(), rat(0));
        assert!(condition_lhs(&f, 4, 1).is_err());
        assert!(condition_lhs(&f, 1, 3).is_err());
        assert!(condition_lhs(&f, 0, 0).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(compute_lambda(&FamilySpec::reference(4)).unwrap(), LambdaVector(rats(&[3, 1, -1])));
        assert_eq!(compute_lambda(&FamilySpec::zero(5, rat(1))).unwrap(), LambdaVector(rats(&[0; 4])));
        assert!(compute_lambda(&FamilySpec::reference(1)).unwrap().is_empty());
        let bumped = FamilySpec::new(4, rat(0), rats(&[0, 1, 0, 0]), BTreeMap::new()).unwrap();
        assert!(matches!(compute_lambda(&bumped), Err(Error::NotConstant { k: 0, i: 2, .. })));
    }

    #[test]
    fn build_a_examples() {
        assert_eq!(build_a(&FamilySpec::reference(4)), build_ctilde(4));
        assert_eq!(build_a(&FamilySpec::zero(3, rat(5))), RatMatrix::scalar(3, rat(5)));
        let mut a = BTreeMap::new();
        a.insert(2, rats(&[7, 0, 0]));
        let f = FamilySpec::new(3, rat(0), rats(&[0, 0, 0]), a).unwrap();
        let m = build_a(&f);
        assert_eq!(*m.get(1, 3), rat(7));
        assert_eq!(*m.get(1, 1), rat(-7));
        assert!((1..3).all(|i| m.get(i + 1, i).is_zero() && m.get(i, i + 1).is_zero()));
    }

    #[test]
    fn predicted_reference() {
        let f = FamilySpec::reference(4);
        let lam = compute_lambda(&f).unwrap();
        let expect = RatMatrix::from_i64_rows(&[&[3, 0, 0, 0], &[-3, 4, 0, 0], &[0, -4, 3, 0], &[0, 0, -3, 0]]).unwrap();
        assert_eq!(predicted_conjugate(&f, &lam).unwrap(), expect);
        let z = FamilySpec::zero(3, rat(2));
        assert_eq!(predicted_conjugate(&z, &compute_lambda(&z).unwrap()).unwrap(), RatMatrix::scalar(3, rat(2)));
        assert!(predicted_conjugate(&f, &LambdaVector(rats(&[1]))).is_err());
    }

    #[test]
    fn verify_reference_family() {
        for n in 1..=12 {
            let r = verify_family(&FamilySpec::reference(n)).unwrap();
            assert!(r.single_band_checked);
        }
        let z = verify_family(&FamilySpec::zero(4, rat(3))).unwrap();
        assert_eq!(z.conjugate, RatMatrix::scalar(4, rat(3)));
    }

    #[test]
    fn unequal_scaling_breaks_the_condition() {
        // b scaled by 2 while a^(1) is kept: not a valid family
        let f = FamilySpec::reference(5);
        let b_only = FamilySpec::new(5, rat(0), f.b_seq().to_vec(), BTreeMap::new()).unwrap();
        let skew = f.combine(&rat(1), &b_only, &rat(1)).unwrap();
        assert!(matches!(compute_lambda(&skew), Err(Error::NotConstant { .. })));
        let half = BigRational::new(1.into(), 2.into());
        let scaled = f.combine(&half, &FamilySpec::zero(5, rat(0)), &rat(0)).unwrap();
        assert!(verify_family(&scaled).is_ok());
    }

    #[test]
    fn c_for_single_band() {
        let f = FamilySpec::reference(5);
        let c = compute_c(&f).unwrap();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), [1, 2, 3]);
        // c_i^(1) = a_{i+1}^(1), higher bands vanish
        for i in 1..=4 {
            assert_eq!(c[&1][i - 1], f.a(1, i as i64 + 1));
        }
        assert!(c[&2].iter().chain(&c[&3]).all(Zero::is_zero));
        assert!(compute_c(&FamilySpec::zero(4, rat(0))).unwrap().values().flatten().all(Zero::is_zero));
        assert!(compute_c(&FamilySpec::reference(2)).unwrap().is_empty());
    }

    #[test]
    fn eliminate_reference() {
        let f = FamilySpec::reference(4);
        let e = eliminate_step(&f).unwrap();
        assert_eq!(e.b_row, alloc::vec![rat(0), rat(0), f.b(4)]);
        let lam = compute_lambda(&f).unwrap();
        let sub_lam = compute_lambda(&e.subfamily).unwrap();
        assert_eq!(sub_lam.values(), &lam.values()[1..]);
        let shifted = build_a(&e.subfamily).add(&RatMatrix::scalar(3, lam.values()[0].clone())).unwrap();
        assert_eq!(shifted, e.a1);

        // with b_{n} forgotten, the last row of level 0 is off by exactly b_n
        let forgetful = e.subfamily.clone().with_b_next(rat(0));
        match compute_lambda(&forgetful) {
            Err(Error::NotConstant { k: 0, i: 3, expected, actual }) => assert_eq!(actual - expected, -f.b(4)),
            other => panic!("unexpected {other:?}"),
        }

        let z = eliminate_step(&FamilySpec::zero(4, rat(2))).unwrap();
        assert_eq!(z.a1, RatMatrix::scalar(3, rat(2)));
        assert!(z.b_row.iter().all(Zero::is_zero));
    }
}
