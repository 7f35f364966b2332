//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod support;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use loewner_cli::checks::{self, Check};
use loewner_core::oracle::Sampler;

const SEED: u64 = 0xacce;

fn report(number: usize, check: &Check) -> bool {
    println!("criterion {number:>2}: {}", check.line());
    check.passed
}

fn with_budget(mut check: Check, budget: Duration) -> Check {
    if check.elapsed >= budget {
        check.passed = false;
        check.detail.push_str(&format!(", over the {:.0} s budget", budget.as_secs_f64()));
    }
    check
}

fn cli_contract() -> Check {
    let start = Instant::now();
    let goldens = support::run_all();
    let failed: Vec<String> = goldens
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    let selftest_start = Instant::now();
    let selftest = Command::new(env!("CARGO_BIN_EXE_loewner"))
        .args(["selftest", "--seed", "0"])
        .output();
    let selftest_time = selftest_start.elapsed();
    let (selftest_ok, selftest_note) = match selftest {
        Ok(out) => (
            out.status.success() && selftest_time < Duration::from_secs(60),
            format!("selftest exit {:?} in {:.2} s", out.status.code(), selftest_time.as_secs_f64()),
        ),
        Err(e) => (false, format!("selftest did not start: {e}")),
    };
    for f in &failed {
        eprintln!("golden failure: {f}");
    }
    Check {
        name: "cli_contract",
        passed: failed.is_empty() && selftest_ok,
        detail: format!(
            "{}/{} golden cases, {selftest_note}",
            goldens.len() - failed.len(),
            goldens.len()
        ),
        elapsed: start.elapsed(),
    }
}

fn main() -> ExitCode {
    let root = Sampler::new(SEED);
    let s = |k: u64| root.derive(k);
    let results = [
        report(1, &with_budget(checks::order_preservation(&mut s(1), 200, 2..=6), Duration::from_secs(5))),
        report(2, &checks::group_law(&mut s(2), 200)),
        report(3, &checks::fixed_points(&mut s(3), 100)),
        report(4, &checks::projection_law(&mut s(4), 200)),
        report(5, &checks::strength_oracle(&mut s(5), 500)),
        report(6, &checks::witness_biconditional(&mut s(6), 200)),
        report(7, &checks::recovery_round_trip(&mut s(7), 50)),
        report(8, &checks::mobius_bridge(&mut s(8), 30, 20)),
        report(9, &checks::exact_fixtures()),
        report(10, &checks::interval_atlas(&mut s(10), 10, 10)),
        report(11, &checks::conjugation_identity(&mut s(11), 100)),
        report(12, &cli_contract()),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
