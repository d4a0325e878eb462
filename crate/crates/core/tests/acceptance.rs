//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integer or integer-polynomial equality), so
//! the only tolerances are the enumeration bounds and time budgets pinned
//! below. Runs without the libtest harness so the lines always print.

use std::time::Instant;

use satake::catalog;
use satake::rootdata::RootDatum;
use satake::verify::{
    check_closure, check_convolution, check_kostka, check_modp, check_pgl2_trace,
    check_satake_oracle, check_scaling, check_twisted_invariance, CriterionReport, CLOSURE_DATA,
    KOSTKA_DATA,
};

const HEIGHT: i64 = 4;
const KOSTKA_HEIGHT: i64 = 6;
const SCALING_HEIGHT: i64 = 3;
const GL2_SPREAD: i64 = 3;
const QS: [u64; 2] = [2, 3];
const SEED: u64 = 20_240_917;
const RANDOM_PAIRS: usize = 10;

fn load(names: &[&str]) -> Vec<RootDatum> {
    names.iter().map(|n| catalog::lookup(n).unwrap()).collect()
}

fn run(report: impl FnOnce() -> CriterionReport, budget_secs: u64) -> (CriterionReport, bool) {
    let start = Instant::now();
    let r = report();
    let secs = start.elapsed().as_secs_f64();
    let ok = r.passed() && secs <= budget_secs as f64;
    let status = if ok { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {} ({}): {} checks in {secs:.2}s (budget {budget_secs}s)",
        r.id, r.name, r.checked
    );
    for n in &r.notes {
        println!("    note: {n}");
    }
    for f in r.failures.iter().take(10) {
        println!("    counterexample: {f}");
    }
    (r, ok)
}

fn main() {
    let closure = load(&CLOSURE_DATA);
    let reports = [
        run(|| check_closure(&closure, HEIGHT), 120),
        run(|| check_satake_oracle(GL2_SPREAD, &QS, &None), 300),
        run(|| check_convolution(&QS, SEED, RANDOM_PAIRS, &None), 300),
        run(|| check_pgl2_trace(&None), 10),
        run(|| check_modp(&closure, HEIGHT, &QS), 10),
        run(|| check_scaling(SCALING_HEIGHT, &None), 10),
        run(|| check_kostka(&load(&KOSTKA_DATA), KOSTKA_HEIGHT), 60),
        run(|| check_twisted_invariance(&catalog::catalog(), HEIGHT), 10),
    ];
    let failed: Vec<u8> = reports
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(r, _)| r.id)
        .collect();
    println!(
        "{} of {} criteria passed",
        reports.len() - failed.len(),
        reports.len()
    );
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
