//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Failures are printed but do not abort `cargo test`, so the remaining suites still run; set
//! `ACCEPTANCE_STRICT=1` to turn any failure into a nonzero exit status.

use std::process::ExitCode;

use quartic_lines::report::JobConfig;
use quartic_lines::verify::{criterion, Bundle};

fn main() -> ExitCode {
    let bundle = Bundle::builtin().expect("bundled examples parse");
    let cfg = JobConfig::default();
    let mut failed = 0;
    for n in 1..=10 {
        let c = criterion(n, &bundle, &cfg);
        println!(
            "criterion {n:>2}: {} - {} ({:.1}s)",
            if c.pass { "PASS" } else { "FAIL" },
            c.statement,
            c.seconds
        );
        if !c.pass {
            failed += 1;
            for d in &c.detail {
                println!("    {d}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
