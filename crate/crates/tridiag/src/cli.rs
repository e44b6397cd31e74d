//! Argument parsing and subcommand dispatch.
//!
//! [`run`] never touches the process: it returns what should go to standard
//! output and standard error together with the exit code, so the binary is a
//! thin shell and tests can drive the same path in-process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use tridiag_core::binom::check_identity_suite;
use tridiag_core::birkhoff::{count_bruteforce, count_dp, CountQuery};
use tridiag_core::family::generate::sample_from_basis;
use tridiag_core::family::{compute_lambda, eliminate_step, verify_family};
use tridiag_core::matrix::build_ctilde;
use tridiag_core::oracle::{charpoly, det_fraction_free};
use tridiag_core::poly::expand_product;
use tridiag_core::triangulate::{
    conjecture_formula, conjugate_by_u, nicer_product, triangularize_ctilde, verify_conjecture,
};
use tridiag_core::{Error, LambdaVector};

use crate::json::{self, FormatError, MatrixData};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "tridiag", version, about = "Exact checks for Pascal-conjugated tridiagonal matrices")]
pub struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant of C(n), factored or expanded.
    Charpoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Form::Product)]
        form: Form,
    },
    /// Checks the product formulas and the bidiagonal form for 2 <= n <= N.
    Verify {
        #[arg(long = "n-max")]
        n_max: usize,
    },
    /// Conjugates a matrix by the Pascal matrix U.
    Conjugate {
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        file: Option<PathBuf>,
        /// Use C~(n) instead of a file.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Family workflows on a family JSON file.
    Family {
        #[arg(value_enum)]
        action: FamilyAction,
        #[arg(long, required_if_eq_any = [("action", "check"), ("action", "conjugate"), ("action", "eliminate")])]
        file: Option<PathBuf>,
        /// Size for `sample`.
        #[arg(long, required_if_eq("action", "sample"))]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Characteristic polynomial of an integer matrix, or determinant of a polynomial matrix.
    Oracle {
        #[arg(long)]
        file: PathBuf,
    },
    /// Counts n x n nonnegative integer matrices with all line sums t.
    Birkhoff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
    },
    /// Exhaustive binomial identity checks for 0 <= j <= k <= n <= N.
    Identities {
        #[arg(long = "n-max")]
        n_max: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Product,
    Expanded,
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyAction {
    Check,
    Conjugate,
    Eliminate,
    /// Draws a family from the solution space with `--seed`.
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dp,
    Brute,
    Both,
}

/// Everything a run produces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// A failed run: usage problems exit 2, failed checks exit 1 and still
/// carry a JSON report for standard output.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check { stdout: String, message: String },
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConstant { .. }
            | Error::StructureMismatch { .. }
            | Error::BlockMismatch { .. } => Failure::Check { stdout: line(&error_report(&e)), message: e.to_string() },
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn error_report(e: &Error) -> Value {
    let cell = |kind: &str, row: &usize, col: &usize, expected, actual| {
        json!({ "status": "fail", "mismatch": {
            "kind": kind, "row": row, "col": col,
            "expected": json::rat_to_json(expected), "actual": json::rat_to_json(actual),
        }})
    };
    match e {
        Error::NotConstant { k, i, expected, actual } => json!({ "status": "fail", "mismatch": {
            "kind": "not-constant", "k": k, "i": i,
            "expected": json::rat_to_json(expected), "actual": json::rat_to_json(actual),
        }}),
        Error::StructureMismatch { row, col, expected, actual } => cell("structure", row, col, expected, actual),
        Error::BlockMismatch { row, col, expected, actual } => cell("block", row, col, expected, actual),
        other => json!({ "status": "error", "message": other.to_string() }),
    }
}

struct Success {
    stdout: String,
    summary: String,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome { stdout: e.to_string(), stderr: String::new(), code: EXIT_PASS };
        }
        Err(e) => return usage_outcome(e.to_string().trim_end()),
    };
    let result = dispatch(&cli.command);
    let (stdout, code, summary) = match result {
        Ok(Success { stdout, summary }) => (stdout, EXIT_PASS, summary),
        Err(Failure::Usage(msg)) => return usage_outcome(&msg),
        Err(Failure::Check { stdout, message }) => (stdout, EXIT_CHECK_FAILED, diagnostic(&message, EXIT_CHECK_FAILED)),
    };
    match &cli.output {
        None => Outcome { stdout, stderr: summary, code },
        Some(path) => match fs::write(path, &stdout) {
            Ok(()) => Outcome { stdout: String::new(), stderr: summary, code },
            Err(e) => usage_outcome(&format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn usage_outcome(msg: &str) -> Outcome {
    Outcome { stdout: String::new(), stderr: diagnostic(msg, EXIT_USAGE), code: EXIT_USAGE }
}

fn diagnostic(msg: &str, code: u8) -> String {
    line(&json!({ "error": msg, "exit": code }))
}

fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| FormatError::from(e).into())
}

fn lambda_json(l: &LambdaVector) -> Value {
    Value::Array(l.values().iter().map(json::rat_to_json).collect())
}

fn dispatch(cmd: &Command) -> Result<Success, Failure> {
    match cmd {
        Command::Charpoly { n, form } => cmd_charpoly(*n, *form),
        Command::Verify { n_max } => cmd_verify(*n_max),
        Command::Conjugate { file, n } => cmd_conjugate(file.as_deref(), *n),
        Command::Family { action, file, n, seed } => cmd_family(*action, file.as_deref(), *n, *seed),
        Command::Oracle { file } => cmd_oracle(file),
        Command::Birkhoff { n, t, method } => cmd_birkhoff(*n, *t, *method),
        Command::Identities { n_max } => cmd_identities(*n_max),
    }
}

fn cmd_charpoly(n: usize, form: Form) -> Result<Success, Failure> {
    let out = match form {
        Form::Product => json::factors_to_json(&nicer_product(n)?),
        Form::Expanded => json::poly_to_json(&expand_product(&nicer_product(n)?)),
        Form::Conjecture => json::poly_to_json(&conjecture_formula(n)?),
    };
    Ok(Success { stdout: line(&out), summary: format!("det C({n}) computed\n") })
}

/// One report line per size: the product formulas and the bidiagonal form.
fn verify_one(n: usize) -> Result<(Value, bool), Error> {
    let report = verify_conjecture(n)?;
    let mut mismatch = report.mismatch.as_ref().map(|m| {
        json!({
            "where": m.route,
            "expected": json::poly_to_json(&m.expected),
            "actual": json::poly_to_json(&m.actual),
        })
    });
    if mismatch.is_none() {
        match triangularize_ctilde(n) {
            Ok(_) => {}
            Err(Error::StructureMismatch { row, col, expected, actual }) => {
                mismatch = Some(json!({
                    "where": format!("triangular-form({row},{col})"),
                    "expected": json::rat_to_json(&expected),
                    "actual": json::rat_to_json(&actual),
                }));
            }
            Err(e) => return Err(e),
        }
    }
    let passed = mismatch.is_none();
    let value = json!({
        "n": n,
        "status": if passed { "pass" } else { "fail" },
        "polynomial": json::poly_to_json(&report.polynomial),
        "mismatch": mismatch,
    });
    Ok((value, passed))
}

fn cmd_verify(n_max: usize) -> Result<Success, Failure> {
    if n_max < 2 {
        return Err(Failure::Usage(format!("--n-max must be at least 2, got {n_max}")));
    }
    let lines = (2..=n_max).into_par_iter().map(verify_one).collect::<Result<Vec<_>, _>>()?;
    let stdout: String = lines.iter().map(|(v, _)| line(v)).collect();
    let failed: Vec<usize> = (2..=n_max).zip(&lines).filter(|(_, (_, ok))| !ok).map(|(n, _)| n).collect();
    if failed.is_empty() {
        let count = n_max - 1;
        return Ok(Success { stdout, summary: format!("verify: {count} sizes checked, all passed\n") });
    }
    Err(Failure::Check { stdout, message: format!("verify: mismatch at n = {failed:?}") })
}

fn cmd_conjugate(file: Option<&Path>, n: Option<usize>) -> Result<Success, Failure> {
    let m = match (file, n) {
        (_, Some(0)) => return Err(Failure::Usage("--n must be positive".into())),
        (_, Some(n)) => build_ctilde(n),
        (Some(path), None) => match json::matrix_from_json(&read_json(path)?)? {
            MatrixData::Rat(m) => m,
            MatrixData::Poly(_) => return Err(Failure::Usage("conjugate takes an int or rat matrix".into())),
        },
        (None, None) => return Err(Failure::Usage("one of --file or --n is required".into())),
    };
    let out = json::rat_matrix_to_json(&conjugate_by_u(&m));
    Ok(Success { stdout: line(&out), summary: format!("conjugated a {0}x{0} matrix\n", m.n()) })
}

fn cmd_family(action: FamilyAction, file: Option<&Path>, n: Option<usize>, seed: u64) -> Result<Success, Failure> {
    if action == FamilyAction::Sample {
        let n = n.ok_or_else(|| Failure::Usage("sample needs --n".into()))?;
        if n == 0 {
            return Err(Failure::Usage("--n must be positive".into()));
        }
        let spec = sample_from_basis(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let out = json::family_to_json(&spec);
        return Ok(Success { stdout: line(&out), summary: format!("sampled a family of size {n} with seed {seed}\n") });
    }
    let path = file.ok_or_else(|| Failure::Usage("--file is required".into()))?;
    let spec = json::family_from_json(&read_json(path)?)?;
    let out = match action {
        FamilyAction::Check => json!({ "status": "pass", "lambda": lambda_json(&compute_lambda(&spec)?) }),
        FamilyAction::Conjugate => {
            let report = verify_family(&spec)?;
            json!({
                "status": "pass",
                "lambda": lambda_json(&report.lambda),
                "conjugate": json::rat_matrix_to_json(&report.conjugate),
                "single_band_checked": report.single_band_checked,
            })
        }
        FamilyAction::Eliminate => {
            let lambda = compute_lambda(&spec)?;
            if spec.n() < 2 {
                return Err(Failure::Usage("elimination needs n >= 2".into()));
            }
            let step = eliminate_step(&spec)?;
            let sub_lambda = compute_lambda(&step.subfamily)?;
            json!({
                "status": "pass",
                "block_form": "confirmed",
                "lambda": lambda_json(&lambda),
                "a1": json::rat_matrix_to_json(&step.a1),
                "b_row": Value::Array(step.b_row.iter().map(json::rat_to_json).collect()),
                "subfamily": json::family_to_json(&step.subfamily),
                "subfamily_lambda": lambda_json(&sub_lambda),
            })
        }
        FamilyAction::Sample => unreachable!("handled above"),
    };
    Ok(Success { stdout: line(&out), summary: format!("family of size {} passed\n", spec.n()) })
}

fn cmd_oracle(path: &Path) -> Result<Success, Failure> {
    let (poly, what) = match json::matrix_from_json(&read_json(path)?)? {
        MatrixData::Rat(m) => (charpoly(&m)?, "characteristic polynomial"),
        MatrixData::Poly(m) => (det_fraction_free(&m)?, "determinant"),
    };
    Ok(Success { stdout: line(&json::poly_to_json(&poly)), summary: format!("{what} computed\n") })
}

fn cmd_birkhoff(n: usize, t: u32, method: Method) -> Result<Success, Failure> {
    let q = CountQuery::new(n, t)?;
    let (count, agreement) = match method {
        Method::Dp => (count_dp(q), None),
        Method::Brute => (count_bruteforce(q)?, None),
        Method::Both => {
            let brute = count_bruteforce(q)?;
            let dp = count_dp(q);
            let agree = brute == dp;
            if !agree {
                let report = json!({
                    "n": n, "t": t, "count": dp.to_string(), "agreement": false, "brute": brute.to_string(),
                });
                return Err(Failure::Check { stdout: line(&report), message: format!("dp gives {dp}, brute force gives {brute}") });
            }
            (dp, Some(agree))
        }
    };
    let mut out = json!({ "n": n, "t": t, "count": count.to_string() });
    if let Some(a) = agreement {
        out["agreement"] = Value::Bool(a);
    }
    Ok(Success { stdout: line(&out), summary: format!("H_{n}({t}) = {count}\n") })
}

fn cmd_identities(n_max: u64) -> Result<Success, Failure> {
    let report = check_identity_suite(n_max)?;
    let failure = report.failure.as_ref().map(|f| json!({ "identity": f.identity.name(), "n": f.n, "k": f.k, "j": f.j }));
    let out = json!({
        "n_max": report.n_max,
        "checked": report.checked,
        "status": if report.passed() { "pass" } else { "fail" },
        "failure": failure,
    });
    if !report.passed() {
        return Err(Failure::Check { stdout: line(&out), message: "binomial identity failed".into() });
    }
    Ok(Success { stdout: line(&out), summary: format!("identities: {} instances passed\n", report.checked) })
}
