//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! exits nonzero if any fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use torus_sw::alexander::XT;
use torus_sw::classify::{lambda_closed_form, Verdict};
use torus_sw::cli::verify::{run_verify, Suite, SweepSpec};
use torus_sw::oracle::displayed_branches;
use torus_sw::swcalc::{elliptic_surface_sw, F};
use torus_sw::{
    alexander_closed_form, alexander_via_determinant, basic_classes, collapse_count, count_formula, distinguish_q2,
    lambda_set, sw_fiber_sum_general, sw_link_surgery, FamilyParams, LaurentPolynomial,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid(ps: std::ops::RangeInclusive<u32>, qs: std::ops::RangeInclusive<u32>) -> Vec<(u32, u32)> {
    ps.flat_map(|p| qs.clone().map(move |q| (p, q))).collect()
}

/// Runs `check` on every cell in parallel and reports the first failing cell
/// in grid order.
fn all_cells<C, F>(cells: &[C], check: F) -> Result<usize, String>
where
    C: Sync + std::fmt::Debug,
    F: Fn(&C) -> Result<(), String> + Sync,
{
    let results: Vec<_> = cells.par_iter().map(|c| check(c).map_err(|e| format!("{c:?}: {e}"))).collect();
    match results.into_iter().find_map(Result::err) {
        Some(e) => Err(e),
        None => Ok(cells.len()),
    }
}

fn within(elapsed: Duration, limit_secs: u64, what: String) -> Outcome {
    if elapsed.as_secs_f64() < limit_secs as f64 {
        Ok(format!("{what}, {:.2}s", elapsed.as_secs_f64()))
    } else {
        Err(format!("{what} but took {:.2}s (limit {limit_secs}s)", elapsed.as_secs_f64()))
    }
}

fn sw(n: u32, r: u32, p: u32, q: u32) -> Result<LaurentPolynomial, String> {
    let params = FamilyParams::new(p, q, n, r).map_err(|e| e.to_string())?;
    sw_link_surgery(params).map(|s| s.poly).map_err(|e| e.to_string())
}

fn enumerated_count(n: u32, p: u32, q: u32) -> Result<i64, String> {
    Ok(basic_classes(&sw(n, 1, p, q)?).count as i64)
}

fn determinant_equals_closed_form() -> Outcome {
    let start = Instant::now();
    let cells = grid(1..=8, 2..=8);
    let n = all_cells(&cells, |&(p, q)| {
        let det = alexander_via_determinant(p, q).map_err(|e| e.to_string())?;
        let closed = alexander_closed_form(p, q).map_err(|e| e.to_string())?;
        if det == closed {
            Ok(())
        } else {
            Err(format!("det {det} != closed {closed}"))
        }
    })?;
    within(start.elapsed(), 10, format!("{n} cells"))
}

fn basic_class_count() -> Outcome {
    let start = Instant::now();
    let cells: Vec<_> = (1..=4).flat_map(|n| grid(2..=8, 3..=8).into_iter().map(move |(p, q)| (n, p, q))).collect();
    let k = all_cells(&cells, |&(n, p, q)| {
        let formula = count_formula(n, p, q).map_err(|e| e.to_string())?;
        let expected = (2 * n as i64 + 2 * q as i64 - 6) * p as i64 + (q as i64 * n as i64 - 4 * n as i64 - 4 * q as i64 + 12);
        let got = enumerated_count(n, p, q)?;
        if formula == expected && got == expected {
            Ok(())
        } else {
            Err(format!("enumerated {got}, formula {formula}, expected {expected}"))
        }
    })?;
    within(start.elapsed(), 30, format!("{k} cells"))
}

fn lattice_decomposition() -> Outcome {
    let cells: Vec<_> = (1..=4).flat_map(|n| grid(2..=8, 3..=8).into_iter().map(move |(p, q)| (n, p, q))).collect();
    let k = all_cells(&cells, |&(n, p, q)| {
        let lambda = lambda_set(n, p, q).map_err(|e| e.to_string())?.cardinality as i64;
        let closed = lambda_closed_form(n, p, q).map_err(|e| e.to_string())?;
        let (n64, p64, q64) = (n as i64, p as i64, q as i64);
        let expected = (2 * p64 - 3) * (q64 - 2) * n64 - (2 * p64 - 4) * (q64 - 3) * (n64 - 1);
        let total = enumerated_count(n, p, q)?;
        if lambda == expected && closed == expected && total == lambda + 2 * n64 {
            Ok(())
        } else {
            Err(format!("#lambda {lambda}, closed {closed}, expected {expected}, N {total}"))
        }
    })?;
    Ok(format!("{k} cells"))
}

fn degenerate_counts() -> Outcome {
    let p1: Vec<_> = (1..=4).flat_map(|n| (2..=8).map(move |q| (n, 1, q, q * n))).collect();
    let q2: Vec<_> = (1..=4).flat_map(|n| (1..=10).map(move |p| (n, p, 2, 2 * n))).collect();
    let cells: Vec<_> = p1.into_iter().chain(q2).collect();
    let k = all_cells(&cells, |&(n, p, q, want)| {
        let got = enumerated_count(n, p, q)?;
        if got == want as i64 {
            Ok(())
        } else {
            Err(format!("count {got}, want {want}"))
        }
    })?;
    Ok(format!("{k} cells"))
}

fn branch_consistency() -> Outcome {
    let cells: Vec<_> = (1..=3)
        .flat_map(|n| (1..=3).flat_map(move |r| grid(1..=6, 2..=6).into_iter().map(move |(p, q)| (n, r, p, q))))
        .collect();
    let branches = std::sync::atomic::AtomicUsize::new(0);
    let k = all_cells(&cells, |&(n, r, p, q)| {
        let poly = sw(n, r, p, q)?;
        let displayed = displayed_branches(n, r, p, q);
        if displayed.is_empty() {
            return Err("no branch applies".into());
        }
        branches.fetch_add(displayed.len(), std::sync::atomic::Ordering::Relaxed);
        for (label, b) in displayed {
            if b != poly {
                return Err(format!("{label}: {b} != {poly}"));
            }
        }
        Ok(())
    })?;
    Ok(format!("{k} cells, {} branch comparisons", branches.into_inner()))
}

fn fiber_sum_coherence() -> Outcome {
    let cells: Vec<_> = (2..=4)
        .flat_map(|n| (1..=3).flat_map(move |r| grid(1..=5, 2..=5).into_iter().map(move |(p, q)| (n, r, p, q))))
        .collect();
    let k = all_cells(&cells, |&(n, r, p, q)| {
        let sw_x = elliptic_surface_sw(n).map_err(|e| e.to_string())?;
        let fs = sw_fiber_sum_general(&sw_x, F, r, p, q).map_err(|e| e.to_string())?.poly;
        let ls = sw(n, r, p, q)?.rename("xi", F).map_err(|e| e.to_string())?;
        if fs == ls {
            Ok(())
        } else {
            Err(format!("fiber sum {fs} != link surgery {ls}"))
        }
    })?;
    Ok(format!("{k} cells"))
}

fn conjugation_symmetry() -> Outcome {
    let cells: Vec<_> = (1..=4)
        .flat_map(|n| (1..=4).flat_map(move |r| grid(1..=8, 2..=8).into_iter().map(move |(p, q)| (n, r, p, q))))
        .collect();
    let k = all_cells(&cells, |&(n, r, p, q)| {
        let poly = sw(n, r, p, q)?;
        let sign = if (n + r).is_multiple_of(2) { 1 } else { -1 };
        if poly.mirror() == poly.scale(&BigInt::from(sign)) {
            Ok(())
        } else {
            Err(format!("mirror is not {sign} times {poly}"))
        }
    })?;
    Ok(format!("{k} cells"))
}

fn recurrence() -> Outcome {
    let xt = LaurentPolynomial::monomial(&XT, &[1, 1], BigInt::from(1));
    // det(I - xΓ_{p,q+1}) = D_q + xt (D_q - D_{q-1}); every side is a determinant
    let check = |&(p, q): &(u32, u32)| -> Result<(), String> {
        let d = |q| alexander_via_determinant(p, q).map_err(|e| e.to_string());
        let (next, cur, prev) = (d(q + 1)?, d(q)?, d(q - 1)?);
        let rhs = &cur + &(&xt * &(&cur - &prev));
        if next == rhs {
            Ok(())
        } else {
            Err(format!("{next} != {rhs}"))
        }
    };
    let k = all_cells(&grid(2..=6, 4..=7), check)?;
    let k3 = all_cells(&grid(2..=6, 3..=3), check)?;
    Ok(format!("{k} cells with q >= 4, {k3} direct q = 3 cells"))
}

fn worked_distinction() -> Outcome {
    let cmp = distinguish_q2(1, 3, 2).map_err(|e| e.to_string())?;
    let first = &cmp.first.divisibility_multiset;
    let second = &cmp.second.divisibility_multiset;
    if cmp.r == 3 && *first == [1, 1, 5, 5] && *second == [1, 1, 3, 3] && cmp.verdict == Verdict::Distinguished {
        Ok(format!("r = {}, {first:?} vs {second:?}, {}", cmp.r, cmp.verdict))
    } else {
        Err(format!("r = {}, {first:?} vs {second:?}, {}", cmp.r, cmp.verdict))
    }
}

fn collapsed_growth() -> Outcome {
    let one = LaurentPolynomial::one(&[F]);
    let mut summary = Vec::new();
    for q in 3..=5 {
        let counts = (2..=10)
            .map(|p| {
                let fs = sw_fiber_sum_general(&one, F, 1, p, q).map_err(|e| e.to_string())?;
                collapse_count(&fs).map(|(_, c)| c).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(w) = counts.windows(2).position(|w| w[0] >= w[1]) {
            return Err(format!("q = {q}: count at p = {} is {}, at p = {} is {}", w + 2, counts[w], w + 3, counts[w + 1]));
        }
        summary.push(format!("q = {q}: {counts:?}"));
    }
    Ok(summary.join("; "))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = torus_sw::cli::run(std::iter::once("torus-sw").chain(args.iter().copied()), &mut out, &mut err);
    if code == 0 {
        Ok(out)
    } else {
        Err(format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)))
    }
}

fn round_trip_and_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let swx = dir.path().join("swx.json");
    std::fs::write(&swx, elliptic_surface_sw(3).map_err(|e| e.to_string())?.to_json()).map_err(|e| e.to_string())?;
    let swx = swx.to_str().ok_or("temp path")?.to_string();
    let fs_file = dir.path().join("fs.json");
    let fs_path = fs_file.to_str().ok_or("temp path")?.to_string();

    let poly_runs: Vec<Vec<&str>> = vec![
        vec!["alexander", "--p", "5", "--q", "7", "--method", "det", "--format", "json"],
        vec!["alexander", "--p", "5", "--q", "7", "--method", "closed", "--format", "json"],
        vec!["sw", "--n", "4", "--r", "3", "--p", "6", "--q", "5", "--format", "json"],
        vec!["fibersum", "--swx", &swx, "--r", "2", "--p", "4", "--q", "4", "--format", "json"],
    ];
    let mut checked = 0;
    for args in &poly_runs {
        let a = run_cli(args)?;
        if a != run_cli(args)? {
            return Err(format!("{args:?}: repeated runs differ"));
        }
        let text = String::from_utf8(a).map_err(|e| e.to_string())?;
        let parsed = LaurentPolynomial::from_json(&text).map_err(|e| e.to_string())?;
        if format!("{}\n", parsed.to_json()) != text {
            return Err(format!("{args:?}: parse then emit changed the output"));
        }
        checked += 1;
    }
    std::fs::write(&fs_file, run_cli(&poly_runs[3])?).map_err(|e| e.to_string())?;
    let collapse_args = ["collapse", "--in", fs_path.as_str(), "--format", "json"];
    let collapsed = run_cli(&collapse_args)?;
    let text = String::from_utf8(collapsed.clone()).map_err(|e| e.to_string())?;
    let parsed = LaurentPolynomial::from_json(&text).map_err(|e| e.to_string())?;
    if collapsed != run_cli(&collapse_args)? || format!("{}\n", parsed.to_json()) != text {
        return Err("collapse output is not stable under repeat or round trip".into());
    }
    checked += 1;

    let structured: Vec<(Vec<&str>, serde_json::Value)> = vec![
        (
            vec!["basic-classes", "--n", "2", "--r", "3", "--p", "4", "--q", "3", "--format", "json"],
            serde_json::to_value(basic_classes(&sw(2, 3, 4, 3)?)).map_err(|e| e.to_string())?,
        ),
        (
            vec!["distinguish", "--n", "1", "--p1", "3", "--p2", "2", "--json"],
            serde_json::to_value(distinguish_q2(1, 3, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?,
        ),
        (
            vec!["verify", "--suite", "all", "--p", "1..5", "--q", "2..5", "--n", "1..3", "--r", "1..2", "--format", "json"],
            serde_json::to_value(
                run_verify(&SweepSpec {
                    p: 1..=5,
                    q: 2..=5,
                    n: 1..=3,
                    r: 1..=2,
                    suite: Suite::All,
                })
                .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?,
        ),
    ];
    for (args, expected) in &structured {
        let a = run_cli(args)?;
        if a != run_cli(args)? {
            return Err(format!("{args:?}: repeated runs differ"));
        }
        let parsed: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
        if &parsed != expected {
            return Err(format!("{args:?}: parsed output differs from the emitted object"));
        }
        checked += 1;
    }

    for args in [
        vec!["count", "--n", "1..4", "--p", "2..8", "--q", "3..8", "--verify", "--format", "csv"],
        vec!["verify", "--suite", "count", "--format", "csv"],
        vec!["basic-classes", "--n", "3", "--r", "2", "--p", "5", "--q", "4", "--format", "csv"],
    ] {
        let a = run_cli(&args)?;
        if a != run_cli(&args)? {
            return Err(format!("{args:?}: repeated runs differ"));
        }
        let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(a.as_slice());
        let mut writer = csv::Writer::from_writer(Vec::new());
        for record in reader.records() {
            writer.write_record(&record.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        }
        if writer.into_inner().map_err(|e| e.to_string())? != a {
            return Err(format!("{args:?}: csv parse then emit changed the output"));
        }
        checked += 1;
    }

    let text_args = ["verify", "--suite", "all", "--p", "1..4", "--q", "2..4", "--n", "1..2", "--r", "1..2"];
    if run_cli(&text_args)? != run_cli(&text_args)? {
        return Err("verify text output differs between runs".into());
    }
    checked += 1;

    let bin = env!("CARGO_BIN_EXE_torus-sw");
    let args = ["sw", "--n", "2", "--r", "2", "--p", "3", "--q", "4", "--format", "json"];
    let outputs: Vec<_> = (0..2)
        .map(|_| std::process::Command::new(bin).args(args).output().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if outputs[0].stdout != outputs[1].stdout || outputs[0].stdout != run_cli(&args)? {
        return Err("separate processes produced different bytes".into());
    }
    checked += 1;

    Ok(format!("{checked} outputs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Alexander determinant equals closed form, p 1..8, q 2..8", determinant_equals_closed_form),
        ("basic-class count formula, n 1..4, p 2..8, q 3..8", basic_class_count),
        ("lattice set count and N = #lambda + 2n", lattice_decomposition),
        ("p = 1 count is qn, q = 2 count is 2n", degenerate_counts),
        ("SW formula equals each displayed branch", branch_consistency),
        ("fiber sum with E(n) equals link surgery", fiber_sum_coherence),
        ("mirror(SW) = (-1)^(n+r) SW", conjugation_symmetry),
        ("q-recurrence, p 2..6, q 4..7, plus q = 3 directly", recurrence),
        ("q = 2 worked distinction n = 1, p1 = 3, p2 = 2", worked_distinction),
        ("collapsed term count grows with p, q 3..5", collapsed_growth),
        ("deterministic output and parse/emit round trip", round_trip_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
