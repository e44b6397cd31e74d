//! Acceptance suite: ten criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p tridiag --test acceptance -- --nocapture` to see
//! the report. Every comparison is exact; the tolerance is zero throughout.
//! Expected values come from oracles written here (Pascal triangle by
//! addition, Gaussian elimination over the rationals, cofactor expansion)
//! rather than from the library under test.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use tridiag_core::binom::{binom, check_identity_suite};
use tridiag_core::birkhoff::{count_bruteforce, count_dp, CountQuery, BRUTE_MAX_N, BRUTE_MAX_T};
use tridiag_core::family::generate::{generate_suite, Origin};
use tridiag_core::family::{build_a, compute_lambda, eliminate_step, verify_family};
use tridiag_core::matrix::{build_c, build_ctilde, build_p, build_q, build_u, build_u1, build_uinv};
use tridiag_core::oracle::{det_fraction_free, det_tridiagonal, TridiagonalSpec};
use tridiag_core::poly::expand_product;
use tridiag_core::triangulate::{
    conjecture_formula, conjugate_by_u, nicer_product, triangularize_ctilde, verify_lowpart,
};
use tridiag_core::{BigInt, BigRational, FamilySpec, Matrix, Poly, PolyMatrix, RatMatrix};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 0x7121_D1A6;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(int(x))
}

// ---------- independent oracles ----------

/// Rows `0..=n` of Pascal's triangle, built by addition only.
fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                let right = prev.get(k).cloned().unwrap_or_default();
                left + right
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn pick(tri: &[Vec<BigInt>], top: usize, bottom: i64) -> BigInt {
    if bottom < 0 || bottom as usize > top {
        BigInt::zero()
    } else {
        tri[top][bottom as usize].clone()
    }
}

type Dense = Vec<Vec<BigInt>>;

/// `U` with `U[i][j] = binom(n-i, n-j)` (1-based), from the triangle.
fn pascal_u(tri: &[Vec<BigInt>], n: usize) -> Dense {
    (1..=n).map(|i| (1..=n).map(|j| pick(tri, n - i, n as i64 - j as i64)).collect()).collect()
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn dense_of(m: &RatMatrix) -> Option<Dense> {
    m.rows().map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()).collect()
}

fn rat_of(d: &Dense) -> RatMatrix {
    RatMatrix::from_rows(d.iter().map(|r| r.iter().cloned().map(BigRational::from_integer).collect()).collect())
        .unwrap()
}

/// `C~(n)` from its entry formulas.
fn ctilde_dense(n: usize) -> Dense {
    let nn = n as i64;
    (1..=nn)
        .map(|i| {
            (1..=nn)
                .map(|j| {
                    int(if i == j {
                        (nn + 1 - i) * (nn + 1 - 2 * i)
                    } else if i == j + 1 {
                        (nn + 1 - i) * (1 - i)
                    } else if i + 1 == j {
                        (nn + 1 - i) * (nn - i)
                    } else {
                        0
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination over the rationals.
fn det_gauss(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Laplace expansion along the first row.
fn det_cofactor(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut total = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &det_cofactor(&minor);
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

// ---------- criteria ----------

fn c1_fixture() -> Outcome {
    let ctilde = RatMatrix::from_i64_rows(&[&[12, 12, 0, 0], &[-3, 3, 6, 0], &[0, -4, -2, 2], &[0, 0, -3, -3]]).unwrap();
    let u = RatMatrix::from_i64_rows(&[&[1, 3, 3, 1], &[0, 1, 2, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]]).unwrap();
    let conj = RatMatrix::from_i64_rows(&[&[3, 0, 0, 0], &[-3, 4, 0, 0], &[0, -4, 3, 0], &[0, 0, -3, 0]]).unwrap();
    ensure(build_ctilde(4) == ctilde, || "C~(4) differs from the displayed matrix".into())?;
    ensure(build_u(4) == u, || "U(4) differs from the displayed matrix".into())?;
    ensure(conjugate_by_u(&build_ctilde(4)) == conj, || "U C~(4) U^-1 differs from the displayed matrix".into())?;
    Ok("3 matrices entry-for-entry".into())
}

fn c2_conjecture_sweep() -> Outcome {
    for n in 2..=60usize {
        let conj = conjecture_formula(n).map_err(|e| e.to_string())?;
        let nicer = expand_product(&nicer_product(n).map_err(|e| e.to_string())?);
        let c = build_c(n).map_err(|e| e.to_string())?;
        let cont = det_tridiagonal(&TridiagonalSpec::from_matrix(&c).map_err(|e| e.to_string())?);
        ensure(conj == nicer, || format!("n = {n}: parity product {conj} vs root product {nicer}"))?;
        ensure(conj == cont, || format!("n = {n}: parity product {conj} vs continuant {cont}"))?;
        ensure(conj.degree() == Some(n - 1) && conj.is_monic(), || format!("n = {n}: not monic of degree n-1"))?;
        // pointwise against elimination on C(t0), with C rebuilt from its entry formulas
        let nn = n as i64;
        for t0 in [0i64, 1, 2 * nn + 3] {
            let m: Vec<Vec<BigRational>> = (1..nn)
                .map(|i| {
                    (1..nn)
                        .map(|j| {
                            rat(if i == j {
                                t0 - (nn - 2 * i + 2) * (nn - 1 - i) - 1
                            } else if i == j + 1 {
                                (i - 1) * (nn - i)
                            } else if i + 1 == j {
                                -(nn - 1 - i) * (nn - i)
                            } else {
                                0
                            })
                        })
                        .collect()
                })
                .collect();
            let want = det_gauss(m);
            let got = BigRational::from_integer(conj.eval_int(&int(t0)));
            ensure(want == got, || format!("n = {n}, t = {t0}: elimination gives {want}, formula gives {got}"))?;
        }
        if n <= 24 {
            let bareiss = det_fraction_free(&c).map_err(|e| e.to_string())?;
            ensure(bareiss == conj, || format!("n = {n}: fraction-free determinant {bareiss}"))?;
        }
    }
    Ok("59 sizes, 3 routes plus pointwise elimination".into())
}

fn c3_triangular_sweep() -> Outcome {
    let tri = pascal(60);
    for n in 1..=60usize {
        let nn = n as i64;
        let expected: Dense = (1..=nn)
            .map(|i| {
                (1..=nn)
                    .map(|j| {
                        int(if i == j {
                            i * (nn - i)
                        } else if i == j + 1 {
                            (nn + 1 - i) * (1 - i)
                        } else {
                            0
                        })
                    })
                    .collect()
            })
            .collect();
        let got = conjugate_by_u(&build_ctilde(n));
        ensure(got == rat_of(&expected), || format!("n = {n}: conjugate is not the expected bidiagonal matrix"))?;
        triangularize_ctilde(n).map_err(|e| format!("n = {n}: {e}"))?;
        // U C~ = B U with U from the triangle, no inverse involved
        let u = pascal_u(&tri, n);
        ensure(dense_mul(&u, &ctilde_dense(n)) == dense_mul(&expected, &u), || format!("n = {n}: U C~ != B U"))?;
    }
    Ok("60 sizes, library conjugate and U C~ = B U".into())
}

fn c4_inverse_formulas() -> Outcome {
    let tri = pascal(200);
    for n in 1..=200usize {
        let to_int = |m: &RatMatrix| m.map(|x| x.to_integer());
        let u = to_int(&build_u(n));
        ensure(u.rows().map(|r| r.to_vec()).collect::<Dense>() == pascal_u(&tri, n), || {
            format!("n = {n}: U differs from Pascal's triangle")
        })?;
        let id = Matrix::<BigInt>::identity(n);
        ensure(u.mul(&to_int(&build_uinv(n))).unwrap() == id, || format!("n = {n}: U U^-1 != I"))?;
        ensure(to_int(&build_p(n)).mul(&to_int(&build_q(n))).unwrap() == id, || format!("n = {n}: P Q != I"))?;
        if n >= 2 {
            let block = to_int(&build_u1(n).map_err(|e| e.to_string())?.block_diag_one());
            ensure(block.mul(&to_int(&build_p(n))).unwrap() == u, || format!("n = {n}: blockdiag(U1, 1) P != U"))?;
        }
    }
    Ok("n = 1..200".into())
}

fn c5_lowpart() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let tri = pascal(12);
    for trial in 0..200 {
        let n = rng.gen_range(1..=12usize);
        let m: Dense = (0..n)
            .map(|i| (0..n).map(|j| if i >= j + 2 { int(0) } else { int(rng.gen_range(-20..=20)) }).collect())
            .collect();
        let report = verify_lowpart(&rat_of(&m)).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(report.passed(), || format!("trial {trial}: {:?}", report.mismatch))?;
        let conj = dense_of(&report.conjugate).ok_or_else(|| format!("trial {trial}: conjugate not integral"))?;
        let u = pascal_u(&tri, n);
        ensure(dense_mul(&u, &m) == dense_mul(&conj, &u), || format!("trial {trial}: U M != M' U"))?;
        for i in 0..n {
            for j in 0..i {
                ensure(conj[i][j] == m[i][j], || format!("trial {trial}: entry ({},{}) changed", i + 1, j + 1))?;
            }
        }
    }
    Ok("200 seeded matrices".into())
}

/// `A` rebuilt from the theorem's entry formulas.
fn family_matrix(f: &FamilySpec) -> RatMatrix {
    let n = f.n();
    Matrix::from_fn(n, |i, j| {
        let ii = i as i64;
        if i == j {
            let mut d = f.r() + f.b(ii);
            for t in 1..n {
                let a = f.a(t, ii);
                d = if t % 2 == 1 { d + a } else { d - a };
            }
            d
        } else if i == j + 1 {
            f.b(ii)
        } else if j > i {
            f.a(j - i, ii)
        } else {
            rat(0)
        }
    })
}

fn c6_family_suite() -> Outcome {
    // (a) reduction to C~
    for n in 1..=30usize {
        let a = build_a(&FamilySpec::reference(n));
        ensure(a == build_ctilde(n), || format!("(a) n = {n}: build_A(reference) != C~"))?;
        ensure(a == rat_of(&ctilde_dense(n)), || format!("(a) n = {n}: build_A(reference) != C~ formulas"))?;
    }
    // (b) generated families, checked against a conjugate computed here
    let suite = generate_suite(SEED, 6, 6);
    let tri = pascal(6);
    let (mut closure, mut single) = (0usize, 0usize);
    let mut origins = [0usize; 4];
    for (idx, (origin, f)) in suite.iter().enumerate() {
        origins[*origin as usize] += 1;
        let n = f.n();
        let report = verify_family(f).map_err(|e| format!("(b) family {idx} ({origin:?}, n = {n}): {e}"))?;
        let a = family_matrix(f);
        ensure(build_a(f) == a, || format!("(b) family {idx}: build_A disagrees with the entry formulas"))?;
        let u = rat_of(&pascal_u(&tri, n));
        let l = &report.conjugate;
        ensure(u.mul(&a).unwrap() == l.mul(&u).unwrap(), || format!("(b) family {idx}: U A != L U"))?;
        let lambda = report.lambda.values();
        for (i, j, v) in l.entries() {
            let want = if i == j {
                lambda[..n - i].iter().fold(f.r().clone(), |acc, x| acc + x)
            } else if i == j + 1 {
                f.b(i as i64)
            } else {
                rat(0)
            };
            ensure(*v == want, || format!("(b) family {idx}: entry ({i},{j}) is {v}, expected {want}"))?;
        }
        // (c) elimination closure
        if n >= 2 {
            let step = eliminate_step(f).map_err(|e| format!("(c) family {idx}: {e}"))?;
            let sub = compute_lambda(&step.subfamily).map_err(|e| format!("(c) family {idx}: {e}"))?;
            ensure(sub.values() == &lambda[1..], || format!("(c) family {idx}: lambda' is not lambda shifted"))?;
            closure += 1;
        }
        // (d) single-band closed form
        if f.only_first_band() {
            for i in 1..=n {
                let ii = i as i64;
                let want = f.r() + f.a(1, ii) + rat(n as i64 - ii) * (f.b(ii + 1) - f.b(ii));
                ensure(*l.get(i, i) == want, || format!("(d) family {idx}: diagonal {i}"))?;
            }
            single += 1;
        }
    }
    ensure(suite.len() >= 100, || format!("(b) only {} families generated", suite.len()))?;
    ensure(origins[Origin::Search as usize] > 0, || "(b) no filtered random families".into())?;
    ensure(single > 0, || "(d) no single-band families exercised".into())?;
    Ok(format!(
        "(a) n <= 30; (b) {} families [scaled {}, combination {}, basis {}, search {}]; (c) {closure} closures; (d) {single} single-band",
        suite.len(),
        origins[Origin::Scaled as usize],
        origins[Origin::Combination as usize],
        origins[Origin::Basis as usize],
        origins[Origin::Search as usize],
    ))
}

fn random_poly<R: Rng>(rng: &mut R) -> Poly {
    if rng.gen_bool(0.2) {
        return Poly::zero();
    }
    let deg = rng.gen_range(0..=2usize);
    Poly::new((0..=deg).map(|_| int(rng.gen_range(-5..=5))).collect())
}

fn c7_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut cofactor_checked = 0;
    for trial in 0..200 {
        let n = rng.gen_range(1..=10usize);
        let diag: Vec<Poly> = (0..n).map(|_| Poly::t() - random_poly(&mut rng)).collect();
        let sub: Vec<Poly> = (1..n).map(|_| random_poly(&mut rng)).collect();
        let sup: Vec<Poly> = (1..n).map(|_| random_poly(&mut rng)).collect();
        let spec = TridiagonalSpec::new(diag, sub, sup).map_err(|e| e.to_string())?;
        let m: PolyMatrix = spec.to_matrix();
        let cont = det_tridiagonal(&spec);
        let bareiss = det_fraction_free(&m).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(cont == bareiss, || format!("trial {trial} (n = {n}): continuant {cont} vs fraction-free {bareiss}"))?;
        if n <= 6 {
            let rows: Vec<Vec<Poly>> = m.rows().map(|r| r.to_vec()).collect();
            let lap = det_cofactor(&rows);
            ensure(lap == cont, || format!("trial {trial} (n = {n}): cofactor {lap} vs continuant {cont}"))?;
            cofactor_checked += 1;
        }
    }
    ensure(cofactor_checked > 0, || "no instance small enough for cofactor expansion".into())?;
    Ok(format!("200 seeded matrices, {cofactor_checked} also by cofactor expansion"))
}

fn c8_birkhoff() -> Outcome {
    let q = |n, t| CountQuery::new(n, t).unwrap();
    for n in 1..=BRUTE_MAX_N {
        for t in 0..=BRUTE_MAX_T {
            let brute = count_bruteforce(q(n, t)).map_err(|e| e.to_string())?;
            let dp = count_dp(q(n, t));
            ensure(brute == dp, || format!("H_{n}({t}): dp {dp} vs brute force {brute}"))?;
        }
    }
    for n in 1..=6 {
        ensure(count_dp(q(n, 0)).is_one(), || format!("H_{n}(0) != 1"))?;
        ensure(count_dp(q(n, 1)) == factorial(n), || format!("H_{n}(1) != {n}!"))?;
    }
    for t in 0..=30u32 {
        ensure(count_dp(q(2, t)) == BigInt::from(t + 1), || format!("H_2({t}) != {}", t + 1))?;
    }
    Ok("dp = brute for n <= 4, t <= 6; H_n(0), H_n(1), H_2(t)".into())
}

fn c9_identities() -> Outcome {
    let report = check_identity_suite(50).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{:?}", report.failure))?;
    let tri = pascal(51);
    for n in 0..=51i64 {
        for k in -1..=n + 1 {
            let want = pick(&tri, n as usize, k);
            ensure(binom(n, k).unwrap() == want, || format!("binom({n}, {k}) disagrees with the triangle"))?;
        }
    }
    Ok(format!("4 identities, {} instances, binom matches the triangle", report.checked))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridiag")).args(args).output().expect("binary runs")
}

fn check_exit(args: &[&str], code: i32) -> Result<(), String> {
    let out = cli(args);
    ensure(out.status.code() == Some(code), || format!("{args:?}: exit {:?}, expected {code}", out.status.code()))?;
    if code != 0 {
        let last = String::from_utf8_lossy(&out.stderr).lines().last().unwrap_or_default().to_owned();
        let diag: Value = serde_json::from_str(&last).map_err(|_| format!("{args:?}: stderr diagnostic is not JSON"))?;
        ensure(diag["exit"] == code, || format!("{args:?}: diagnostic names exit {}", diag["exit"]))?;
    }
    Ok(())
}

fn c10_cli() -> Outcome {
    let perturbed = fixture("family_perturbed.json");
    let family = fixture("family_n4.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", "--n-max", "60"],
        vec!["charpoly", "--n", "12", "--form", "product"],
        vec!["family", "conjugate", "--file", &family],
        vec!["family", "check", "--file", &perturbed],
        vec!["family", "sample", "--n", "6", "--seed", "11"],
        vec!["birkhoff", "--n", "4", "--t", "6", "--method", "both"],
    ];
    for args in &runs {
        let (a, b) = (cli(args), cli(args));
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || format!("{args:?}: runs differ"))?;
    }
    check_exit(&["verify", "--n-max", "60"], 0)?;
    check_exit(&["identities", "--n-max", "50"], 0)?;
    check_exit(&["family", "check", "--file", &perturbed], 1)?;
    check_exit(&["verify", "--n-max", "1"], 2)?;
    check_exit(&["charpoly", "--n", "1"], 2)?;
    check_exit(&["family", "check", "--file", &fixture("family_b1.json")], 2)?;
    check_exit(&["family", "check", "--file", &fixture("malformed.json")], 2)?;
    Ok(format!("{} commands byte-identical twice; exits 0/1/2 exercised", runs.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("n = 4 fixture matrices", c1_fixture),
        ("determinant formulas, n = 2..60", c2_conjecture_sweep),
        ("bidiagonal conjugate, n = 1..60", c3_triangular_sweep),
        ("U U^-1, P Q, blockdiag(U1,1) P, n <= 200", c4_inverse_formulas),
        ("strictly lower part preserved", c5_lowpart),
        ("generalized family suite", c6_family_suite),
        ("determinant oracles agree", c7_oracles),
        ("Birkhoff counts", c8_birkhoff),
        ("binomial identities, n <= 50", c9_identities),
        ("CLI contract", c10_cli),
    ];
    println!("acceptance (tolerance: exact, zero)");
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
