//! Runs every acceptance criterion with the default seed and prints one
//! line per criterion. Exits non-zero if any criterion fails or overruns
//! its time budget.

use std::process::ExitCode;

use extkoszul_cli::commands::DEFAULT_SEED;
use extkoszul_cli::report::Status;
use extkoszul_cli::verify::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    println!("running {} acceptance criteria (seed {DEFAULT_SEED})", CRITERIA.len());
    for (k, c) in CRITERIA.iter().enumerate() {
        let check = run_criterion(c, DEFAULT_SEED, false);
        let budget = c.budget.as_millis() as u64;
        let in_time = check.runtime_ms <= budget;
        let ok = check.status == Status::Pass && in_time;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {} ({} ms, budget {} ms)",
            k + 1,
            c.name,
            if ok { "pass" } else { "FAIL" },
            check.runtime_ms,
            budget
        );
        if !ok {
            println!("    expected: {}", check.expected);
            println!("    actual:   {}", check.actual);
            if !in_time {
                println!("    over budget");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
