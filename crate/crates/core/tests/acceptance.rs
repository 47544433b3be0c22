//! Acceptance criteria. Each prints one PASS/FAIL line; the process fails if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tracediv::abelian::{delsarte_mceliece_valuation, mceliece_ell, AbelianCodeSpec};
use tracediv::artin_schreier::{search_extremal_detailed, TowerParams};
use tracediv::code::{bruteforce_valuation, GeneratorMatrix};
use tracediv::criterion::{criterion_valuation, CriterionOptions};
use tracediv::suites::{self, EquivalenceCase, SuiteRow};
use tracediv::{FieldTower, Limits, Valuation};

const SEED: u64 = 20260;
const EQUIVALENCE_CASES: usize = 500;
const TENSOR_VECTORS_PER_CASE: usize = 20;
const SEARCH_BUDGET: u64 = 5000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rows_outcome(rows: &[SuiteRow], min_rows: usize) -> Outcome {
    let failed: Vec<&SuiteRow> = rows.iter().filter(|r| !r.pass).collect();
    let mut detail = format!("{} rows, {} failures", rows.len(), failed.len());
    if rows.len() < min_rows {
        detail += &format!(" (expected at least {min_rows} rows)");
    }
    for r in failed.iter().take(3) {
        detail += &format!("; {}: expected {}, measured {}", r.case, r.expected, r.measured);
    }
    Outcome {
        pass: failed.is_empty() && rows.len() >= min_rows,
        detail,
    }
}

fn from_result(r: tracediv::Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Outcome {
        pass: false,
        detail: format!("error: {e}"),
    })
}

fn stickelberger() -> tracediv::Result<Outcome> {
    let qs = [2, 3, 4, 5, 7, 8, 9, 16];
    let rows = suites::stickelberger(&qs)?;
    // one row per character index i ∈ [0, q-2]
    let expected_rows: u64 = qs.iter().map(|q| q - 1).sum();
    Ok(rows_outcome(&rows, expected_rows as usize))
}

fn fourier() -> tracediv::Result<Outcome> {
    let qs = [2, 3, 4, 5, 8, 9];
    Ok(rows_outcome(&suites::fourier(&qs)?, qs.len()))
}

fn tensor_valuation() -> tracediv::Result<Outcome> {
    let (qs, ks) = ([2, 3, 4, 5], [1, 2, 3]);
    let rows = suites::tensor_valuation(&qs, &ks, TENSOR_VECTORS_PER_CASE, SEED)?;
    let vectors = rows.len() * TENSOR_VECTORS_PER_CASE;
    let mut o = rows_outcome(&rows, qs.len() * ks.len());
    o.pass &= vectors >= 200;
    o.detail += &format!(", {vectors} vectors");
    Ok(o)
}

fn equivalence(cases: &[EquivalenceCase]) -> Outcome {
    let bad: Vec<&EquivalenceCase> = cases.iter().filter(|c| c.criterion != c.oracle).collect();
    let mut detail = format!("{} matrices, {} mismatches", cases.len(), bad.len());
    for c in bad.iter().take(3) {
        detail += &format!("; {}: criterion {}, oracle {}", c.label(), c.criterion, c.oracle);
    }
    Outcome {
        pass: bad.is_empty() && cases.len() >= EQUIVALENCE_CASES,
        detail,
    }
}

fn simplex() -> tracediv::Result<Outcome> {
    let limits = Limits::default();
    let tower = Arc::new(FieldTower::new(2, 1, 3)?);
    let row = (0..7).map(|j| tower.alpha_pow(j)).collect();
    let g = GeneratorMatrix::new(tower, vec![row])?;
    let criterion = criterion_valuation(&g, &CriterionOptions::default())?.valuation;
    let oracle = bruteforce_valuation(&g, &limits)?.valuation;
    let spec = AbelianCodeSpec::cyclic(7, 2, 1, &[1]);
    let program = delsarte_mceliece_valuation(&spec, &limits)?.valuation;
    let mc = mceliece_ell(&spec)?;
    let mceliece = Valuation::integer(mc.ell as i64 - 1);
    let two = Valuation::integer(2);
    Ok(Outcome {
        pass: [criterion, oracle, program, mceliece].iter().all(|v| *v == two),
        detail: format!("criterion {criterion}, oracle {oracle}, program {program}, mceliece ℓ-1 {mceliece}"),
    })
}

fn abelian_threeway() -> tracediv::Result<Outcome> {
    let cases = suites::abelian_threeway(&Limits::default())?;
    let bad: Vec<_> = cases.iter().filter(|c| !c.agree()).collect();
    let mut detail = format!("{} cyclic codes, {} disagreements", cases.len(), bad.len());
    for c in bad.iter().take(3) {
        detail += &format!(
            "; p={} n={} reps={:?}: mceliece {}, program {}, oracle {}",
            c.p, c.n, c.reps, c.mceliece, c.delsarte_mceliece, c.oracle
        );
    }
    let lengths_covered = suites::THREEWAY_LENGTHS
        .iter()
        .all(|&n| [2, 3].iter().any(|&p| n % p != 0 && cases.iter().any(|c| c.n == n && c.p == p)));
    Ok(Outcome {
        pass: bad.is_empty() && lengths_covered,
        detail,
    })
}

fn bounds_chain() -> tracediv::Result<Outcome> {
    let params = TowerParams { p: 2, e: 1, m: 2 };
    Ok(rows_outcome(&suites::bounds_chain(params, 2, 3, &Limits::default())?, 1))
}

fn tightness() -> tracediv::Result<Outcome> {
    let limits = Limits::default();
    let instances = suites::tightness_instances();
    let required = [(2, 2, 1, 1), (2, 2, 2, 1), (2, 2, 2, 2), (3, 1, 2, 2)];
    let mut failures = Vec::new();
    for (p, m, k, d) in required {
        let present = instances.iter().any(|&(t, kk, dd)| (t.p, t.e, t.m, kk, dd) == (p, 1, m, k, d));
        if !present {
            failures.push(format!("instance p={p} m={m} k={k} d={d} missing"));
        }
    }
    for &(t, k, d) in &instances {
        if t.order() > 9 {
            failures.push(format!("instance with Q = {} > 9", t.order()));
            continue;
        }
        let tower = Arc::new(FieldTower::new(t.p, t.e, t.m)?);
        let tight = Valuation::integer((t.em() * (k as u64).div_ceil(d)) as i64);
        let s = search_extremal_detailed(d, k, &tower, SEARCH_BUDGET, SEED, &limits)?;
        let ok = s.found.as_ref().is_some_and(|h| {
            h.count.valuation == tight && h.polynomial.is_homogeneous() && h.polynomial.degree() == Some(d)
        });
        if !ok {
            failures.push(format!("p={} e={} m={} k={k} d={d}: no f with ν = {tight}", t.p, t.e, t.m));
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: format!("{} instances, {} failures {:?}", instances.len(), failures.len(), failures),
    })
}

fn program_minimum() -> tracediv::Result<Outcome> {
    Ok(rows_outcome(&suites::program_minimum(&Limits::default())?, 1))
}

fn ax() -> tracediv::Result<Outcome> {
    // one row per (k, d) with k ≤ 3, d ≤ 2
    Ok(rows_outcome(&suites::ax(&[2], 3, 2, &Limits::default())?, 6))
}

fn with_workers<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .expect("thread pool")
        .install(f)
}

fn determinism(reference: &[EquivalenceCase]) -> tracediv::Result<Outcome> {
    let limits = Limits::default();
    let key = |cs: &[EquivalenceCase]| -> Vec<(Valuation, Option<Vec<u64>>)> {
        cs.iter().map(|c| (c.criterion, c.argmin.clone())).collect()
    };
    let one = with_workers(1, || suites::oracle_equivalence_cases(EQUIVALENCE_CASES, SEED, &limits))?;
    let eight = with_workers(8, || suites::oracle_equivalence_cases(EQUIVALENCE_CASES, SEED, &limits))?;
    let (a, b, c) = (key(&one), key(&eight), key(reference));
    let diffs = a.iter().zip(&b).filter(|(x, y)| x != y).count();
    Ok(Outcome {
        pass: a.len() == EQUIVALENCE_CASES && a == b && a == c,
        detail: format!("{} pairs, {diffs} differ between 1 and 8 workers", a.len()),
    })
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |id: u32, name: &str, budget: Duration, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            o.pass = false;
            o.detail += &format!("; over time budget {budget:?}");
        }
        all &= o.pass;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {id:>2} {name} [{:.2}s]: {}", elapsed.as_secs_f64(), o.detail);
    };
    let secs = Duration::from_secs;
    let limits = Limits::default();

    report(1, "stickelberger", secs(10), &mut || from_result(stickelberger()));
    report(2, "fourier expansion", secs(10), &mut || from_result(fourier()));
    report(3, "tensor valuation", secs(30), &mut || from_result(tensor_valuation()));
    let mut cases = Vec::new();
    report(4, "criterion = oracle", secs(300), &mut || {
        match suites::oracle_equivalence_cases(EQUIVALENCE_CASES, SEED, &limits) {
            Ok(c) => {
                cases = c;
                equivalence(&cases)
            }
            Err(e) => from_result(Err(e)),
        }
    });
    report(5, "simplex four-way", secs(1), &mut || from_result(simplex()));
    report(6, "abelian three-way", secs(120), &mut || from_result(abelian_threeway()));
    report(7, "artin-schreier bounds", secs(300), &mut || from_result(bounds_chain()));
    report(8, "tightness", secs(300), &mut || from_result(tightness()));
    report(9, "program minimum", secs(600), &mut || from_result(program_minimum()));
    report(10, "ax", secs(60), &mut || from_result(ax()));
    report(11, "determinism", secs(600), &mut || from_result(determinism(&cases)));

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
