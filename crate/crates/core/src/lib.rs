//! Exact arithmetic for tridiagonal matrix families that become lower
//! bidiagonal after conjugation by the Pascal matrix `U[i][j] = binom(n-i, n-j)`.
//!
//! Everything here is `no_std` + `alloc`: integer polynomials, dense exact
//! matrices, the conjugation and its certified closed forms, two independent
//! determinant oracles, and a lattice-point counter for magic-square style
//! matrices. IO and the command-line front end live in the `tridiag` crate.

#![no_std]
#![forbid(unsafe_code)]
// mismatch errors carry the exact values involved
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod binom;
pub mod birkhoff;
pub mod error;
pub mod family;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod triangulate;

pub use error::{Error, Result};
pub use family::{FamilySpec, LambdaVector};
pub use matrix::{Matrix, PolyMatrix, RatMatrix};
pub use poly::{Poly, ProductFactors};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
