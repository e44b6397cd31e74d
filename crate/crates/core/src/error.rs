use alloc::string::String;
use core::fmt;

use num_rational::BigRational;

/// Errors raised by the core library.
///
/// Mathematical falsifications that the caller is expected to report (a
/// conjectured polynomial that does not match, say) are *not* errors; they
/// come back inside report structs. The variants here are precondition
/// violations and certified-structure failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size or index argument is outside the documented range.
    OutOfRange { what: &'static str, value: i64 },
    /// Two matrices (or a matrix and a vector) do not conform.
    DimensionMismatch { left: usize, right: usize },
    /// A polynomial division that must be exact left a remainder.
    InexactDivision,
    /// A rational entry was required to be an integer.
    NotIntegral { row: usize, col: usize },
    /// A matrix computed by an exact product disagrees with its closed form.
    StructureMismatch { row: usize, col: usize, expected: BigRational, actual: BigRational },
    /// `P A Q` is not of the block form `[[A1, 0], [B, r]]`.
    BlockMismatch { row: usize, col: usize, expected: BigRational, actual: BigRational },
    /// The family condition is not independent of the row index.
    NotConstant { k: usize, i: usize, expected: BigRational, actual: BigRational },
    /// A family spec violates its own invariants.
    InvalidFamily(String),
    /// A matrix handed to the low-part check has a nonzero entry with `i - j >= 2`.
    NotLowerHessenberg { row: usize, col: usize },
    /// A matrix expected to be tridiagonal has a nonzero entry off the band.
    NotTridiagonal { row: usize, col: usize },
    /// Brute-force enumeration was asked for a size beyond its guard.
    LimitExceeded { n: usize, t: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { what, value } => write!(f, "{what} out of range: {value}"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::InexactDivision => f.write_str("polynomial division left a nonzero remainder"),
            Error::NotIntegral { row, col } => write!(f, "entry ({row},{col}) is not an integer"),
            Error::StructureMismatch { row, col, expected, actual } => write!(
                f,
                "structure mismatch at ({row},{col}): expected {expected}, got {actual}"
            ),
            Error::BlockMismatch { row, col, expected, actual } => write!(
                f,
                "block form mismatch at ({row},{col}): expected {expected}, got {actual}"
            ),
            Error::NotConstant { k, i, expected, actual } => write!(
                f,
                "condition not constant for k = {k}: row {i} gives {actual}, row 1 gives {expected}"
            ),
            Error::InvalidFamily(msg) => write!(f, "invalid family: {msg}"),
            Error::NotLowerHessenberg { row, col } => {
                write!(f, "entry ({row},{col}) lies two or more below the diagonal but is nonzero")
            }
            Error::NotTridiagonal { row, col } => {
                write!(f, "entry ({row},{col}) is outside the tridiagonal band but nonzero")
            }
            Error::LimitExceeded { n, t } => {
                write!(f, "brute-force limits exceeded (n = {n}, t = {t}; need n <= 4, t <= 6)")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
