//! Seeded generators of families that satisfy the row-independence condition.
//!
//! The condition is linear in `(b, a)`, so the admissible families of a
//! given size form a rational vector space (with `r` free). [`condition_basis`]
//! computes a basis of that space by exact elimination; the samplers draw
//! from it, from scalings of the reference family, or by plain random search.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{compute_lambda, condition_lhs, FamilySpec};

/// One free coordinate of a family: `b_i` (`band == 0`) or `a_i^(band)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot {
    band: usize,
    i: usize,
}

fn slots(n: usize) -> Vec<Slot> {
    let mut out: Vec<Slot> = (2..=n).map(|i| Slot { band: 0, i }).collect();
    for s in 1..n {
        out.extend((1..=n - s).map(|i| Slot { band: s, i }));
    }
    out
}

fn assemble(n: usize, r: BigRational, slots: &[Slot], values: &[BigRational]) -> FamilySpec {
    let mut b = vec![BigRational::zero(); n];
    let mut a: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
    for (slot, v) in slots.iter().zip(values) {
        if v.is_zero() {
            continue;
        }
        if slot.band == 0 {
            b[slot.i - 1] = v.clone();
        } else {
            a.entry(slot.band).or_insert_with(|| vec![BigRational::zero(); n])[slot.i - 1] = v.clone();
        }
    }
    FamilySpec::new(n, r, b, a).expect("slots respect the support")
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis (with `r = 0`) of all size-`n` families whose condition value is
/// independent of the row for every level.
pub fn condition_basis(n: usize) -> Vec<FamilySpec> {
    assert!(n >= 1);
    let vars = slots(n);
    if vars.is_empty() {
        return Vec::new();
    }
    let units: Vec<FamilySpec> = (0..vars.len())
        .map(|v| {
            let mut values = vec![BigRational::zero(); vars.len()];
            values[v] = BigRational::one();
            assemble(n, BigRational::zero(), &vars, &values)
        })
        .collect();
    // one equation per (k, i >= 2): lhs(i, k) - lhs(1, k) = 0
    let mut rows = Vec::new();
    for k in 0..n - 1 {
        for i in 2..=n - k {
            let row: Vec<BigRational> = units
                .iter()
                .map(|u| condition_lhs(u, i, k).unwrap() - condition_lhs(u, 1, k).unwrap())
                .collect();
            rows.push(row);
        }
    }
    let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows, vars.len()) };
    let free = (0..vars.len()).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut values = vec![BigRational::zero(); vars.len()];
        values[f] = BigRational::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            values[p] = -row[f].clone();
        }
        assemble(n, BigRational::zero(), &vars, &values)
    })
    .collect()
}

fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=4i64);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational combination of [`condition_basis`] with a random `r`.
pub fn sample_from_basis<R: Rng>(n: usize, rng: &mut R) -> FamilySpec {
    let basis = condition_basis(n);
    let r = small_rational(rng, 6);
    basis.iter().fold(FamilySpec::zero(n, r), |acc, v| {
        acc.combine(&BigRational::one(), v, &small_rational(rng, 5)).expect("same size")
    })
}

/// `gamma` times the reference family, shifted to parameter `r`.
pub fn scaled_reference(n: usize, gamma: &BigRational, r: BigRational) -> FamilySpec {
    FamilySpec::reference(n)
        .combine(gamma, &FamilySpec::zero(n, BigRational::zero()), &BigRational::zero())
        .expect("same size")
        .with_r(r)
}

/// Draws `attempts` families with integer entries in `[-bound, bound]` and
/// keeps the ones that pass the condition.
pub fn random_search<R: Rng>(n: usize, bound: i64, attempts: usize, rng: &mut R) -> Vec<FamilySpec> {
    let vars = slots(n);
    (0..attempts)
        .filter_map(|_| {
            let values: Vec<BigRational> =
                vars.iter().map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
            let r = BigRational::from_integer(rng.gen_range(-bound..=bound).into());
            let spec = assemble(n, r, &vars, &values);
            compute_lambda(&spec).ok().map(|_| spec)
        })
        .collect()
}

/// How a generated family was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Rational multiple of the reference family.
    Scaled,
    /// Rational combination of two passing families.
    Combination,
    /// Random element of the computed solution space.
    Basis,
    /// Random integer search, filtered.
    Search,
}

/// A deterministic mix of generated families for sizes `1..=max_n`.
pub fn generate_suite(seed: u64, max_n: usize, per_size: usize) -> Vec<(Origin, FamilySpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 1..=max_n {
        for _ in 0..per_size {
            let gamma = small_rational(&mut rng, 7);
            let r = small_rational(&mut rng, 7);
            let scaled = scaled_reference(n, &gamma, r);
            let drawn = sample_from_basis(n, &mut rng);
            let alpha = small_rational(&mut rng, 3);
            let beta = small_rational(&mut rng, 3);
            let mixed = scaled.combine(&alpha, &drawn, &beta).expect("same size");
            out.push((Origin::Scaled, scaled));
            out.push((Origin::Basis, drawn));
            out.push((Origin::Combination, mixed));
        }
        if n <= 5 {
            out.extend(random_search(n, 1, 200, &mut rng).into_iter().take(per_size).map(|f| (Origin::Search, f)));
        }
    }
    out
}
