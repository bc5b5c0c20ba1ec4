//! Command-line front end.
//!
//! Every path ends in a [`RunResult`]: the document to print and an exit
//! code (0 verified, 1 violation, 2 usage, 3 inconclusive).

mod render;
mod sweep;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::certified::{
    euler_product_to_width, Claim, Outcome, PrecisionPolicy, VerificationReport, WeightedSumScan,
};
use crate::interval::DEFAULT_PRECISION;
use crate::lie::{Enclosure, MuBoundReport, NilpotentProfile};
use crate::partitions::{PartitionTable, RestrictedTable};
use crate::sums::{pnk_direct, verify_unimodal_row, PnkRows, UnimodalProfile};
use crate::{Error, Nat, Result};

pub use sweep::{sweep, GENFUN_DEGREE};

/// Largest tail split tried by `product`.
pub const PRODUCT_ELL_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Verified = 0,
    Violation = 1,
    Usage = 2,
    Inconclusive = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub code: ExitCode,
    /// Written to stdout.
    pub document: String,
    /// Written to stderr.
    pub diagnostics: String,
}

impl RunResult {
    fn ok(document: String) -> Self {
        RunResult {
            code: ExitCode::Verified,
            document,
            diagnostics: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut diagnostics = message.into();
        if !diagnostics.ends_with('\n') {
            diagnostics.push('\n');
        }
        RunResult {
            code: ExitCode::Usage,
            document: String::new(),
            diagnostics,
        }
    }

    fn from_error(err: Error) -> Self {
        match err {
            Error::Counterexample { .. } => RunResult {
                code: ExitCode::Violation,
                document: String::new(),
                diagnostics: format!("error: {err}\n"),
            },
            _ => RunResult::usage(format!("error: {err}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "binpart", version, about = "Partition sums p(n,k): exact values, tables and verified bounds")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact values: `p N`, `pk K N` or `pnk N K`.
    Compute {
        #[arg(value_enum)]
        kind: ComputeKind,
        #[arg(required = true)]
        args: Vec<usize>,
    },
    /// Rows `k, p(k), p(N,k)` for `1 <= k <= N`.
    Table { n: usize },
    /// Sweep a claim over `NMIN..=NMAX` (defaults per claim).
    Verify {
        /// Claim id, or `all`.
        claim: String,
        nmin: Option<usize>,
        nmax: Option<usize>,
    },
    /// Peak column and shape of row N.
    Peak { n: usize },
    /// Enclosure of prod 1/(1-q^j) for q = QNUM/QDEN to width TOL.
    Product {
        qnum: BigUint,
        qden: BigUint,
        /// Decimal or scientific notation, e.g. 1e-12.
        tol: String,
    },
    /// Upper bounds for the faithful module dimension, dimension N, class K.
    Mu {
        n: usize,
        k: usize,
        /// Include the filiform bound; requires K = N-1.
        #[arg(long)]
        filiform: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComputeKind {
    P,
    Pk,
    Pnk,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                RunResult::usage(text)
            } else {
                RunResult::ok(text)
            };
        }
    };
    let policy = match PrecisionPolicy::from_env() {
        Ok(p) => p,
        Err(err) => return RunResult::from_error(err),
    };
    execute(&cli, &policy).unwrap_or_else(RunResult::from_error)
}

pub fn execute(cli: &Cli, policy: &PrecisionPolicy) -> Result<RunResult> {
    match &cli.command {
        Command::Compute { kind, args } => cmd_compute(*kind, args, cli.format),
        Command::Table { n } => cmd_table(*n, cli.format.unwrap_or(Format::Csv)),
        Command::Verify { claim, nmin, nmax } => cmd_verify(claim, *nmin, *nmax, cli.format, policy),
        Command::Peak { n } => cmd_peak(*n, cli.format),
        Command::Product { qnum, qden, tol } => cmd_product(qnum, qden, tol, cli.format, policy),
        Command::Mu { n, k, filiform } => cmd_mu(*n, *k, *filiform, cli.format),
    }
}

/// JSON by default, otherwise the flattened `key,value` view.
fn keyed<T: Serialize>(doc: &T, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Json) {
        Format::Json => render::json(doc),
        Format::Csv => render::csv(&["key", "value"], &render::flatten(doc)),
        Format::Markdown => render::markdown(&["key", "value"], &render::flatten(doc)),
    }
}

#[derive(Serialize)]
struct ComputeDoc {
    kind: ComputeKind,
    args: Vec<usize>,
    #[serde(with = "crate::decimal")]
    value: Nat,
}

pub fn cmd_compute(kind: ComputeKind, args: &[usize], format: Option<Format>) -> Result<RunResult> {
    let arity = match kind {
        ComputeKind::P => 1,
        ComputeKind::Pk | ComputeKind::Pnk => 2,
    };
    if args.len() != arity {
        let usage = match kind {
            ComputeKind::P => "compute p N",
            ComputeKind::Pk => "compute pk K N",
            ComputeKind::Pnk => "compute pnk N K",
        };
        return Ok(RunResult::usage(format!("usage: {usage} (got {} arguments)", args.len())));
    }
    let value = match kind {
        ComputeKind::P => PartitionTable::build(args[0])[args[0]].clone(),
        ComputeKind::Pk => {
            let (k, n) = (args[0], args[1]);
            RestrictedTable::build(k, n)?.get(n).expect("built to n").clone()
        }
        ComputeKind::Pnk => {
            let (n, k) = (args[0], args[1]);
            if k > n {
                return Err(Error::domain(format!("p(n,k) needs k <= n, got n={n}, k={k}")));
            }
            pnk_direct(n, k, &PartitionTable::build(n))?
        }
    };
    let doc = ComputeDoc {
        kind,
        args: args.to_vec(),
        value,
    };
    Ok(RunResult::ok(match format {
        None => format!("{}\n", doc.value),
        Some(f) => keyed(&doc, Some(f)),
    }))
}

#[derive(Serialize)]
struct TableRow {
    k: usize,
    #[serde(with = "crate::decimal")]
    p_k: Nat,
    #[serde(with = "crate::decimal")]
    p_n_k: Nat,
}

#[derive(Serialize)]
struct TableDoc {
    n: usize,
    rows: Vec<TableRow>,
}

pub fn cmd_table(n: usize, format: Format) -> Result<RunResult> {
    if n == 0 {
        return Err(Error::domain("table needs n >= 1"));
    }
    let table = PartitionTable::build(n);
    let row = PnkRows::final_row(&table, n);
    let rows: Vec<TableRow> = (1..=n)
        .map(|k| TableRow {
            k,
            p_k: table[k].clone(),
            p_n_k: row[k].clone(),
        })
        .collect();
    let header = ["k", "p_k", "p_n_k"];
    let cells = || {
        rows.iter()
            .map(|r| vec![r.k.to_string(), r.p_k.to_string(), r.p_n_k.to_string()])
            .collect::<Vec<_>>()
    };
    Ok(RunResult::ok(match format {
        Format::Csv => render::csv(&header, &cells()),
        Format::Markdown => render::markdown(&header, &cells()),
        Format::Json => render::json(&TableDoc { n, rows }),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
    Inconclusive,
}

impl Status {
    fn code(self) -> ExitCode {
        match self {
            Status::Verified => ExitCode::Verified,
            Status::Violated => ExitCode::Violation,
            Status::Inconclusive => ExitCode::Inconclusive,
        }
    }
}

/// Overall status of a set of reports: any violation wins over any
/// inconclusive outcome.
pub fn overall_status(reports: &[VerificationReport]) -> Status {
    let mut status = Status::Verified;
    for r in reports {
        match r.outcome {
            Outcome::Violated { .. } => return Status::Violated,
            Outcome::Inconclusive { .. } => status = Status::Inconclusive,
            Outcome::Verified => {}
        }
    }
    status
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub claim: String,
    pub status: Status,
    pub precision_cap_bits: u32,
    pub reports: Vec<VerificationReport>,
}

/// Renders a verification document and maps its status to the exit code.
pub fn verify_result(doc: &VerifyDoc, format: Option<Format>) -> RunResult {
    let document = match format.unwrap_or(Format::Json) {
        Format::Json => render::json(doc),
        f => {
            let header = ["claim", "n_min", "n_max", "checked", "status", "at", "min_margin", "precision_bits"];
            let rows: Vec<Vec<String>> = doc
                .reports
                .iter()
                .map(|r| {
                    let (status, at) = match &r.outcome {
                        Outcome::Verified => ("verified", None),
                        Outcome::Violated { at } => ("violated", Some(at)),
                        Outcome::Inconclusive { at } => ("inconclusive", Some(at)),
                    };
                    let at = at.map_or(String::new(), |p| match p.k {
                        Some(k) => format!("({},{k})", p.n),
                        None => format!("({})", p.n),
                    });
                    vec![
                        r.claim.to_string(),
                        r.n_min.to_string(),
                        r.n_max.to_string(),
                        r.checked.to_string(),
                        status.to_string(),
                        at,
                        r.min_margin.map_or(String::new(), |m| format!("{m:e}")),
                        r.precision_bits.to_string(),
                    ]
                })
                .collect();
            if f == Format::Csv {
                render::csv(&header, &rows)
            } else {
                render::markdown(&header, &rows)
            }
        }
    };
    RunResult {
        code: doc.status.code(),
        document,
        diagnostics: String::new(),
    }
}

pub fn cmd_verify(
    claim: &str,
    nmin: Option<usize>,
    nmax: Option<usize>,
    format: Option<Format>,
    policy: &PrecisionPolicy,
) -> Result<RunResult> {
    let reports = if claim == "all" {
        Claim::ALL
            .into_iter()
            .map(|c| {
                let (lo, hi) = c.default_range();
                let lo = nmin.map_or(lo, |n| n.max(c.min_n()));
                let hi = nmax.unwrap_or(hi);
                sweep(c, lo, hi.max(lo), policy)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let c: Claim = claim.parse()?;
        let (lo, hi) = c.default_range();
        vec![sweep(c, nmin.unwrap_or(lo), nmax.unwrap_or(hi), policy)?]
    };
    let doc = VerifyDoc {
        claim: claim.to_string(),
        status: overall_status(&reports),
        precision_cap_bits: policy.cap_bits,
        reports,
    };
    Ok(verify_result(&doc, format))
}

#[derive(Serialize)]
struct PeakDoc {
    #[serde(flatten)]
    profile: UnimodalProfile,
    #[serde(with = "crate::decimal")]
    value: Nat,
}

pub fn cmd_peak(n: usize, format: Option<Format>) -> Result<RunResult> {
    let table = PartitionTable::build(n);
    let row = PnkRows::final_row(&table, n);
    let profile = verify_unimodal_row(n, &row)?;
    let value = profile.peak_value().clone();
    Ok(RunResult::ok(keyed(&PeakDoc { profile, value }, format)))
}

/// Parses a positive decimal such as `0.001`, `1e-12` or `5E3`.
pub fn parse_positive_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::domain(format!("expected a positive decimal number, got {text:?}"));
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    if !value.is_positive() {
        return Err(bad());
    }
    Ok(value)
}

#[derive(Serialize)]
struct ProductDoc {
    q: String,
    tol: String,
    status: Status,
    ell: usize,
    precision_bits: u32,
    product: Enclosure,
    weighted_sum: Enclosure,
}

pub fn cmd_product(
    qnum: &BigUint,
    qden: &BigUint,
    tol: &str,
    format: Option<Format>,
    policy: &PrecisionPolicy,
) -> Result<RunResult> {
    if qden.is_zero() || qnum.is_zero() || qnum >= qden {
        return Err(Error::domain(format!("q = {qnum}/{qden} must lie in (0,1)")));
    }
    let q = BigRational::new(BigInt::from(qnum.clone()), BigInt::from(qden.clone()));
    let tol_value = parse_positive_decimal(tol)?;
    // Enough bits that rounding stays well below the requested width.
    let tol_bits = tol_value.denom().bits() as i64 - tol_value.numer().bits() as i64;
    let wanted = u32::try_from((tol_bits + 64).max(i64::from(DEFAULT_PRECISION))).unwrap_or(u32::MAX);
    let prec = wanted.min(policy.cap_bits.max(DEFAULT_PRECISION));
    let (status, (ell, product)) = match euler_product_to_width(&q, &tol_value, prec, PRODUCT_ELL_CAP) {
        Ok(found) => (Status::Verified, found),
        Err(last) => (Status::Inconclusive, last),
    };
    let weighted = WeightedSumScan::new(&q, prec).nth(ell - 2).expect("infinite").1;
    let digits = (tol_bits.max(0) as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 6;
    let doc = ProductDoc {
        q: q.to_string(),
        tol: tol.to_string(),
        status,
        ell,
        precision_bits: prec,
        product: Enclosure::of(&product, digits.max(20)),
        weighted_sum: Enclosure::of(&weighted, digits.max(20)),
    };
    Ok(RunResult {
        code: status.code(),
        document: keyed(&doc, format),
        diagnostics: if status == Status::Inconclusive {
            format!("width {tol} not reached with l <= {PRODUCT_ELL_CAP} at {prec} bits\n")
        } else {
            String::new()
        },
    })
}

pub fn cmd_mu(n: usize, k: usize, filiform: bool, format: Option<Format>) -> Result<RunResult> {
    let profile = NilpotentProfile::new(n, k)?;
    if filiform && !profile.is_filiform() {
        return Err(Error::domain(format!("--filiform requires k = n-1, got n={n}, k={k}")));
    }
    let table = PartitionTable::build(n);
    let pnk = pnk_direct(n, k, &table)?;
    let filiform_bound = if filiform {
        Some(pnk_direct(n - 2, n - 2, &table)? + 1u32)
    } else {
        None
    };
    let report: MuBoundReport = MuBoundReport::from_values(&profile, pnk, filiform_bound)?;
    Ok(RunResult::ok(keyed(&report, format)))
}
