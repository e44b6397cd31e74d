//! Dense univariate polynomials in `t` over the integers.
//!
//! Coefficients are stored in ascending degree, so `coeffs()[k]` is the
//! coefficient of `t^k`. The zero polynomial is the empty vector and every
//! other value has a nonzero last coefficient.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::new(vec![c.into()])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    /// `t - root`.
    pub fn linear(root: impl Into<BigInt>) -> Self {
        Poly { coeffs: vec![-root.into(), BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `t^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// The constant term if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Returns `q` with `q(t) = p(t - c)`.
    ///
    /// Horner's scheme in the ring: `q = (...((a_d)(t - c) + a_{d-1})(t - c) + ...)`.
    pub fn shift(&self, c: &BigInt) -> Poly {
        let mut out = Poly::zero();
        let step = Poly::linear(c.clone());
        for a in self.coeffs.iter().rev() {
            out = &out * &step;
            out += &Poly::constant(a.clone());
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * x + BigRational::from_integer(a.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    /// Long division returning `(quotient, remainder)`, or `None` when some
    /// quotient coefficient is not an integer.
    fn div_rem_integral(&self, d: &Poly) -> Option<(Poly, Poly)> {
        let dd = d.degree()?;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&deg| deg >= dd) else {
            return Some((Poly::zero(), self.clone()));
        };
        let mut quot = vec![BigInt::zero(); top - dd + 1];
        for k in (dd..=top).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * dc;
            }
            quot[k - dd] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// Divides by `d`, requiring a zero remainder.
    ///
    /// Returns [`Error::InexactDivision`] when `d` is zero, when a quotient
    /// coefficient would leave the integers, or when a remainder survives.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        match self.div_rem_integral(d) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::InexactDivision),
        }
    }

    /// Number of times `t - root` divides `self` (zero polynomial excluded).
    pub fn root_multiplicity(&self, root: &BigInt) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let lin = Poly::linear(root.clone());
        let mut p = self.clone();
        let mut m = 0;
        while let Ok(q) = p.div_exact(&lin) {
            p = q;
            m += 1;
        }
        m
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly { coeffs: vec![BigInt::one()] }
    }
}

impl From<BigInt> for Poly {
    fn from(c: BigInt) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        // product of nonzero leading coefficients is nonzero
        Poly { coeffs: out }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// A factored monic polynomial `prod (t - root)^mult`.
///
/// Roots are kept sorted ascending and distinct; inserting a root already
/// present adds to its multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductFactors {
    factors: Vec<(BigInt, u32)>,
}

impl ProductFactors {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, root: BigInt, mult: u32) {
        if mult == 0 {
            return;
        }
        match self.factors.binary_search_by(|(r, _)| r.cmp(&root)) {
            Ok(pos) => self.factors[pos].1 += mult,
            Err(pos) => self.factors.insert(pos, (root, mult)),
        }
    }

    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn expand(&self) -> Poly {
        expand_product(self)
    }
}

impl FromIterator<(BigInt, u32)> for ProductFactors {
    fn from_iter<I: IntoIterator<Item = (BigInt, u32)>>(iter: I) -> Self {
        let mut out = ProductFactors::new();
        for (root, mult) in iter {
            out.push(root, mult);
        }
        out
    }
}

impl FromIterator<BigInt> for ProductFactors {
    fn from_iter<I: IntoIterator<Item = BigInt>>(iter: I) -> Self {
        iter.into_iter().map(|r| (r, 1)).collect()
    }
}

/// Expands `prod (t - root)^mult` into a dense monic polynomial.
pub fn expand_product(f: &ProductFactors) -> Poly {
    let mut out = Poly::one();
    for (root, mult) in &f.factors {
        let lin = Poly::linear(root.clone());
        for _ in 0..*mult {
            out = &out * &lin;
        }
    }
    out
}
