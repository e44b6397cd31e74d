//! Binomial coefficients and exhaustive checks of the classical identities
//! used to manipulate the Pascal-type conjugations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `binom(top, bottom)` with the empty-selection convention: zero when
/// `bottom < 0` or `bottom > top`. Negative `top` is rejected.
pub fn binom(top: i64, bottom: i64) -> Result<BigInt> {
    if top < 0 {
        return Err(Error::OutOfRange { what: "binomial top", value: top });
    }
    Ok(choose(top as u64, bottom))
}

/// Infallible form of [`binom`] for tops known to be nonnegative.
pub fn choose(top: u64, bottom: i64) -> BigInt {
    if bottom < 0 || bottom as u64 > top {
        return BigInt::zero();
    }
    let k = (bottom as u64).min(top - bottom as u64);
    // multiplicative formula; each partial product is itself a binomial
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

/// Signed index helper: `choose` for a top that the caller has already
/// shown to be nonnegative.
pub(crate) fn choose_i(top: i64, bottom: i64) -> BigInt {
    debug_assert!(top >= 0, "negative binomial top {top}");
    choose(top.max(0) as u64, bottom)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `binom(n+1, k) = binom(n, k) + binom(n, k-1)`
    Pascal,
    /// `n binom(n-1, k-1) = k binom(n, k) = (n-k+1) binom(n, k-1)`
    Absorption,
    /// `binom(n, k) binom(k, j) = binom(n, j) binom(n-j, k-j) = binom(n, n-k+j) binom(n-k+j, j)`
    TrinomialRevision,
    /// `binom(n+1, k+1) = sum_{i=k}^{n} binom(i, k)`
    HockeyStick,
}

impl Identity {
    pub const ALL: [Identity; 4] =
        [Identity::Pascal, Identity::Absorption, Identity::TrinomialRevision, Identity::HockeyStick];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Pascal => "pascal",
            Identity::Absorption => "absorption",
            Identity::TrinomialRevision => "trinomial-revision",
            Identity::HockeyStick => "hockey-stick",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: Identity,
    pub n: u64,
    pub k: u64,
    pub j: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub n_max: u64,
    /// Number of (identity, n, k, j) instances evaluated.
    pub checked: u64,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn holds(id: Identity, n: u64, k: u64, j: u64) -> bool {
    let c = |a: u64, b: i64| choose(a, b);
    let (ni, ki, ji) = (n as i64, k as i64, j as i64);
    match id {
        Identity::Pascal => c(n + 1, ki) == c(n, ki) + c(n, ki - 1),
        Identity::Absorption => {
            // n >= k >= 1 keeps every top nonnegative
            let lhs = BigInt::from(n) * c(n - 1, ki - 1);
            let mid = BigInt::from(k) * c(n, ki);
            let rhs = BigInt::from(n - k + 1) * c(n, ki - 1);
            lhs == mid && mid == rhs
        }
        Identity::TrinomialRevision => {
            let lhs = c(n, ki) * c(k, ji);
            let mid = c(n, ji) * c(n - j, ki - ji);
            let rhs = c(n, ni - ki + ji) * c(n - k + j, ji);
            lhs == mid && mid == rhs
        }
        Identity::HockeyStick => {
            let sum: BigInt = (k..=n).map(|i| c(i, ki)).sum();
            c(n + 1, ki + 1) == sum
        }
    }
}

/// Checks all four identities for every `0 <= j <= k <= n <= n_max`
/// (absorption for `k >= 1`, where its tops are defined).
///
/// Stops at the first counterexample.
pub fn check_identity_suite(n_max: u64) -> Result<IdentityReport> {
    if n_max < 1 {
        return Err(Error::OutOfRange { what: "identity suite bound", value: n_max as i64 });
    }
    let mut checked = 0;
    for n in 0..=n_max {
        for k in 0..=n {
            for id in [Identity::Pascal, Identity::HockeyStick] {
                checked += 1;
                if !holds(id, n, k, 0) {
                    return Ok(IdentityReport {
                        n_max,
                        checked,
                        failure: Some(IdentityFailure { identity: id, n, k, j: 0 }),
                    });
                }
            }
            if k >= 1 {
                checked += 1;
                if !holds(Identity::Absorption, n, k, 0) {
                    return Ok(IdentityReport {
                        n_max,
                        checked,
                        failure: Some(IdentityFailure { identity: Identity::Absorption, n, k, j: 0 }),
                    });
                }
            }
            for j in 0..=k {
                checked += 1;
                if !holds(Identity::TrinomialRevision, n, k, j) {
                    return Ok(IdentityReport {
                        n_max,
                        checked,
                        failure: Some(IdentityFailure {
                            identity: Identity::TrinomialRevision,
                            n,
                            k,
                            j,
                        }),
                    });
                }
            }
        }
    }
    Ok(IdentityReport { n_max, checked, failure: None })
}
