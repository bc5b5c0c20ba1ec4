//! Acceptance gate: runs every criterion at its stated tolerance and time
//! budget, prints one PASS/FAIL line each, and exits nonzero on any failure.

use std::time::{Duration, Instant};

use binpart::certified::{
    euler_product_to_width, euler_product_upper, weighted_sum_upper, Claim, PrecisionPolicy, TailParams,
    VerificationReport,
};
use binpart::cli::{self, sweep, ExitCode};
use binpart::partitions::{check_generating_functions, enumerate_partitions, PartitionTable, RestrictedTable};
use binpart::sums::{even_head_and_closed_form, odd_head_and_closed_form, pnk_direct, PnkRows, PnkTriangle, UnimodalProfile};
use binpart::Nat;
use num_bigint::BigInt;
use num_rational::BigRational;

const GOLDEN_TABLE_50: &str = include_str!("fixtures/table_50.csv");

type Check = Result<String, String>;

fn decimal(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verified(report: &VerificationReport) -> Result<(), String> {
    ensure(report.is_verified(), || {
        format!("{} over {}..={}: {:?}", report.claim, report.n_min, report.n_max, report.outcome)
    })
}

fn margin_note(report: &VerificationReport) -> String {
    match (report.min_margin, report.min_margin_at) {
        (Some(m), Some(at)) => format!(
            "{}: min margin {m:.3e} at n={}{}",
            report.claim,
            at.n,
            at.k.map_or(String::new(), |k| format!(",k={k}"))
        ),
        _ => format!("{}: {} checks", report.claim, report.checked),
    }
}

fn run_sweep(claim: Claim, lo: usize, hi: usize, policy: &PrecisionPolicy) -> Result<VerificationReport, String> {
    let report = sweep(claim, lo, hi, policy).map_err(|e| e.to_string())?;
    verified(&report)?;
    Ok(report)
}

/// 1. `table 50` reproduces all 100 printed values.
fn table_reproduction() -> Check {
    let result = cli::run(["binpart", "table", "50"]);
    ensure(result.code == ExitCode::Verified, || format!("exit {:?}", result.code))?;
    let mut values = 0;
    for (ours, printed) in result.document.lines().zip(GOLDEN_TABLE_50.lines()).skip(1) {
        ensure(ours == printed, || format!("row differs: {ours} vs {printed}"))?;
        values += 2;
    }
    ensure(result.document == GOLDEN_TABLE_50, || "document differs from fixture".into())?;
    ensure(values == 100, || format!("compared {values} values"))?;
    Ok("100/100 values match".into())
}

/// 2. Rows 4..=1000 rise strictly to floor((n+3)/2) and fall strictly after.
fn theorem2() -> Check {
    let report = run_sweep(Claim::Thm2, 4, 1000, &PrecisionPolicy::default())?;
    // Independent scan of the same rows: argmax, uniqueness and strictness.
    let table = PartitionTable::build(1000);
    for (n, row) in PnkRows::new(&table, 1000).skip(4) {
        let p = UnimodalProfile::scan(&row);
        ensure(p.peak_k == (n + 3) / 2 && p.unique_max && p.strict_up && p.strict_down, || {
            format!("row {n}: {p:?}")
        })?;
    }
    Ok(format!("{} rows", report.checked))
}

/// 3. `1600 n p(n,k)^2 < 12769 * 4^n`, all `1 <= k <= n <= 1000`.
fn theorem3() -> Check {
    let report = run_sweep(Claim::Thm3, 1, 1000, &PrecisionPolicy::default())?;
    ensure(report.checked == 1000 * 1001 / 2, || format!("{} checks", report.checked))?;
    ensure(report.precision_bits == 0, || "real arithmetic used".into())?;
    Ok(format!("{} pairs; {}", report.checked, margin_note(&report)))
}

/// 4. Diagonal and subdiagonal log bounds for `1 <= n <= 2000` at no more than 512 bits.
fn propositions() -> Check {
    let policy = PrecisionPolicy::with_cap(512);
    let mut notes = Vec::new();
    for claim in [Claim::Prop1, Claim::Prop2] {
        let report = run_sweep(claim, 1, 2000, &policy)?;
        ensure(report.min_margin.is_some_and(|m| m > 0.0), || format!("{claim}: margin {:?}", report.min_margin))?;
        ensure(report.precision_bits <= 512, || format!("{claim}: {} bits", report.precision_bits))?;
        notes.push(format!("{} ({} bits)", margin_note(&report), report.precision_bits));
    }
    Ok(notes.join("; "))
}

/// 5. `F(1/2)` to width 1e-12, and the three q = 252/500 constants.
fn q_series_constants() -> Check {
    let half = BigRational::new(1.into(), 2.into());
    let tol = decimal("0.000000000001");
    let (ell, f_half) = euler_product_to_width(&half, &tol, 128, 256).map_err(|(l, _)| format!("width not reached by l={l}"))?;
    ensure(f_half.contains_rational(&decimal("3.4627466194550636")), || format!("F(1/2) enclosure {f_half}"))?;

    let params = TailParams::from_ratio(252, 500, 64).map_err(|e| e.to_string())?;
    let f = euler_product_upper(&params);
    let s = weighted_sum_upper(&params);
    let fs = &f * &s;
    for (name, value, bound) in [("product", &f, "3.54029829"), ("weighted sum", &s, "2.81577392"), ("their product", &fs, "9.96867959")] {
        ensure(value.hi().cmp_rational(&decimal(bound)).is_lt(), || format!("{name} upper {} !< {bound}", value.hi().to_f64()))?;
    }
    Ok(format!(
        "F(1/2) in {f_half} (l={ell}); upper bounds {:.10}, {:.10}, {:.10}",
        f.hi().to_f64(),
        s.hi().to_f64(),
        fs.hi().to_f64()
    ))
}

/// 6. Sign sums at and past the peak for `4 <= n <= 1000`, plus both
/// closed-form heads at ten even and ten odd `n`.
fn sign_lemmas() -> Check {
    let policy = PrecisionPolicy::default();
    run_sweep(Claim::LemmaLinks, 4, 1000, &policy)?;
    run_sweep(Claim::LemmaRechts, 4, 1000, &policy)?;
    let table = PartitionTable::build(1000);
    let evens = [4, 6, 10, 20, 50, 100, 200, 500, 800, 1000];
    let odds = [11, 13, 21, 51, 101, 201, 333, 501, 777, 999];
    for n in evens {
        let (head, closed) = even_head_and_closed_form(n, &table).map_err(|e| e.to_string())?;
        ensure(head == closed, || format!("even head at n={n}: {head} vs {closed}"))?;
    }
    for n in odds {
        let (head, closed) = odd_head_and_closed_form(n, &table).map_err(|e| e.to_string())?;
        ensure(head == closed, || format!("odd head at n={n}: {head} vs {closed}"))?;
    }
    Ok("997 + 997 signs, 20 closed forms".into())
}

/// 7. `512 p(n,k) > 1745 C(n,k)` for `floor((n+5)/2) <= k <= n <= 500`.
fn lemma_gr() -> Check {
    let report = run_sweep(Claim::LemmaGr, 4, 500, &PrecisionPolicy::default())?;
    Ok(format!("{} pairs", report.checked))
}

/// 8. The partial-product bound for all `1 <= k < n <= 300`, no inconclusive.
fn product_bound() -> Check {
    let report = run_sweep(Claim::Eq9, 2, 300, &PrecisionPolicy::default())?;
    ensure(report.checked == 300 * 299 / 2, || format!("{} checks", report.checked))?;
    Ok(format!("{} pairs; {}", report.checked, margin_note(&report)))
}

/// 9. Enumeration oracle and generating-function coefficients.
fn oracle_equivalence() -> Check {
    let table = PartitionTable::build(40);
    for n in 1..=40 {
        let count = enumerate_partitions(n, n).map_err(|e| e.to_string())?.len();
        ensure(Nat::from(count) == table[n], || format!("p({n}): {count} vs {}", table[n]))?;
    }
    for k in 1..=30 {
        let restricted = RestrictedTable::build(k, 30).map_err(|e| e.to_string())?;
        for j in 0..=30 {
            let count = enumerate_partitions(j, k).map_err(|e| e.to_string())?.len();
            ensure(restricted.get(j) == Some(&Nat::from(count)), || format!("p_{k}({j})"))?;
        }
    }
    for k in 1..=15 {
        check_generating_functions(k, 60)
            .map_err(|e| e.to_string())?
            .map_err(|m| format!("k={k}: {m:?}"))?;
    }
    Ok("p(n) n<=40, p_k(j) j,k<=30, series k<=15 to degree 60".into())
}

/// 10. `p(n+1,k) = p(n,k) + p(n,k-1)` over the triangle to 1000, with the
/// defining sum as an independent check on a sample.
fn recursion() -> Check {
    let tri = PnkTriangle::build(1000);
    let table = tri.partitions();
    let mut checked = 0u64;
    for n in 0..1000 {
        let (row, next) = (tri.row(n).unwrap(), tri.row(n + 1).unwrap());
        ensure(next[0] == Nat::from(1u32), || format!("p({},0)", n + 1))?;
        ensure(next[n + 1] == &row[n] + &table[n + 1], || format!("p({0},{0})", n + 1))?;
        for k in 1..=n {
            ensure(next[k] == &row[k] + &row[k - 1], || format!("recursion at ({},{k})", n + 1))?;
            checked += 1;
        }
    }
    for (n, step) in [(137, 1), (500, 7), (1000, 13)] {
        for k in (0..=n).step_by(step) {
            let direct = pnk_direct(n, k, table).map_err(|e| e.to_string())?;
            ensure(tri.get(n, k) == Some(&direct), || format!("defining sum at ({n},{k})"))?;
        }
    }
    Ok(format!("{checked} recursion steps"))
}

/// 11. Growth-step, Apostol and Stirling bounds to 2000.
fn analytic_bounds() -> Check {
    let policy = PrecisionPolicy::default();
    let mut notes = Vec::new();
    for (claim, lo) in [(Claim::Lemma13, 3), (Claim::Apostol, 1), (Claim::Stirling, 1)] {
        let report = run_sweep(claim, lo, 2000, &policy)?;
        notes.push(margin_note(&report));
    }
    Ok(notes.join("; "))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Check); 11] = [
        (1, "table reproduction", Duration::from_secs(1), table_reproduction),
        (2, "row unimodality, 4 <= n <= 1000", Duration::from_secs(60), theorem2),
        (3, "integer bound, n <= 1000", Duration::from_secs(120), theorem3),
        (4, "diagonal bounds, n <= 2000, <= 512 bits", Duration::from_secs(120), propositions),
        (5, "q-series constants", Duration::from_secs(60), q_series_constants),
        (6, "sign sums and closed forms", Duration::from_secs(60), sign_lemmas),
        (7, "binomial lower bound, n <= 500", Duration::from_secs(60), lemma_gr),
        (8, "partial-product bound, n <= 300", Duration::from_secs(120), product_bound),
        (9, "oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        (10, "triangle recursion, n <= 1000", Duration::from_secs(120), recursion),
        (11, "analytic bounds, n <= 2000", Duration::from_secs(120), analytic_bounds),
    ];
    let mut failures = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{elapsed:.2?}] {detail}"),
            Err(reason) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}] {reason}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 11 acceptance criteria passed");
}
